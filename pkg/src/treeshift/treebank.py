"""CoNLL-U data model, parsing/serialization, and structural predicates.

Trees may be *partial*: a token whose head is unknown carries ``head=None``
(serialized as ``_``).  All types are immutable after construction, so trees
can be shared freely between threads.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, replace
from typing import Iterable, Iterator, Sequence

_MULTIWORD_ID = re.compile(r"^\d+-\d+$")
_EMPTY_NODE_ID = re.compile(r"^\d+\.\d+$")
_WORD_ID = re.compile(r"^\d+$")


class ConlluError(ValueError):
    """Malformed CoNLL-U input, pointing at the offending line."""

    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


def universal_label(deprel: str | None) -> str | None:
    """Strip a label subtype: ``nmod:poss`` -> ``nmod``."""
    if deprel is None:
        return None
    return deprel.split(":", 1)[0]


@dataclass(frozen=True)
class Token:
    """One syntactic word. ``head=0`` marks the root; ``head=None`` is unknown."""

    index: int
    form: str
    lemma: str = "_"
    upos: str = "_"
    xpos: str = "_"
    feats: str = "_"
    head: int | None = None
    deprel: str | None = None
    misc: str = "_"

    def __post_init__(self):
        if self.index < 1:
            raise ValueError(f"token index must be >= 1, got {self.index}")
        if self.head is not None and self.head == self.index:
            raise ValueError(f"token {self.index} has itself as head")


@dataclass(frozen=True)
class DepTree:
    """One sentence. ``tokens`` are indexed 1..n in order."""

    sentence_id: str
    language: str
    tokens: tuple[Token, ...]
    comments: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "tokens", tuple(self.tokens))
        object.__setattr__(self, "comments", tuple(self.comments))
        n = len(self.tokens)
        for pos, tok in enumerate(self.tokens, start=1):
            if tok.index != pos:
                raise ValueError(
                    f"{self.sentence_id}: token index {tok.index} at position {pos}"
                )
            if tok.head is not None and tok.head > n:
                raise ValueError(
                    f"{self.sentence_id}: token {tok.index} head {tok.head} out of range"
                )
        self._check_acyclic()

    def _check_acyclic(self):
        heads = {t.index: t.head for t in self.tokens}
        state: dict[int, int] = {}  # 0 in progress, 1 done
        for start in heads:
            node = start
            path = []
            while node in heads and heads[node] is not None and state.get(node) is None:
                state[node] = 0
                path.append(node)
                node = heads[node]
                if state.get(node) == 0:
                    raise ValueError(f"{self.sentence_id}: head cycle through token {node}")
            for seen in path:
                state[seen] = 1

    def __len__(self) -> int:
        return len(self.tokens)

    def __iter__(self) -> Iterator[Token]:
        return iter(self.tokens)

    @property
    def is_full(self) -> bool:
        """True when every token has a head and exactly one attaches to the root."""
        if any(t.head is None for t in self.tokens):
            return False
        return sum(1 for t in self.tokens if t.head == 0) == 1

    @property
    def root_index(self) -> int | None:
        roots = [t.index for t in self.tokens if t.head == 0]
        return roots[0] if len(roots) == 1 else None

    def children(self) -> dict[int, list[int]]:
        """Map head index (0 = root) -> dependent indices in sentence order."""
        out: dict[int, list[int]] = {}
        for tok in self.tokens:
            if tok.head is not None:
                out.setdefault(tok.head, []).append(tok.index)
        return out

    def forms(self) -> list[str]:
        return [t.form for t in self.tokens]

    def upos_tags(self) -> list[str]:
        return [t.upos for t in self.tokens]

    def with_tokens(self, tokens: Sequence[Token]) -> "DepTree":
        return replace(self, tokens=tuple(tokens))


def _parse_head(value: str, line_no: int, index: int) -> int | None:
    if value == "_":
        return None
    if not _WORD_ID.match(value):
        raise ConlluError(line_no, f"non-numeric head {value!r} for token {index}")
    return int(value)


def _token_from_columns(cols: list[str], line_no: int) -> Token:
    index = int(cols[0])
    head = _parse_head(cols[6], line_no, index)
    if head is not None and head == index:
        raise ConlluError(line_no, f"token {index} has itself as head")
    deprel = None if cols[7] == "_" else cols[7]
    return Token(
        index=index,
        form=cols[1],
        lemma=cols[2],
        upos=cols[3],
        xpos=cols[4],
        feats=cols[5],
        head=head,
        deprel=deprel,
        misc=cols[9],
    )


def parse_conllu(
    source: str | Iterable[str],
    language: str = "",
    diagnostics: list[str] | None = None,
) -> list[DepTree]:
    """Parse 10-column CoNLL-U text into trees, one per sentence block.

    Multiword-token ranges ("1-2") and empty nodes ("1.1") are skipped and
    noted in ``diagnostics`` when a list is supplied.  Comment lines are kept
    verbatim on the tree.  ``sent_id`` comments name the sentence; otherwise
    sentences are numbered s1, s2, ...
    """
    if isinstance(source, str):
        lines = source.split("\n")
    else:
        lines = [line.rstrip("\n") for line in source]

    trees: list[DepTree] = []
    tokens: list[tuple[Token, int]] = []
    comments: list[str] = []
    block_start = 1

    def flush():
        nonlocal tokens, comments
        if not tokens:
            if comments and diagnostics is not None:
                diagnostics.append(f"line {block_start}: dropped comment-only block")
            comments = []
            return
        sent_id = f"s{len(trees) + 1}"
        lang = language
        for comment in comments:
            m = re.match(r"#\s*sent_id\s*=\s*(.+)$", comment)
            if m:
                sent_id = m.group(1).strip()
            m = re.match(r"#\s*language\s*=\s*(.+)$", comment)
            if m:
                lang = m.group(1).strip()
        n = len(tokens)
        for tok, line_no in tokens:
            if tok.head is not None and tok.head > n:
                raise ConlluError(line_no, f"head {tok.head} out of range (sentence has {n} tokens)")
        try:
            tree = DepTree(
                sentence_id=sent_id,
                language=lang,
                tokens=tuple(tok for tok, _ in tokens),
                comments=tuple(comments),
            )
        except ValueError as exc:
            raise ConlluError(block_start, str(exc)) from exc
        trees.append(tree)
        tokens = []
        comments = []

    for line_no, raw in enumerate(lines, start=1):
        line = raw.rstrip("\r")
        if not line.strip():
            flush()
            block_start = line_no + 1
            continue
        if line.startswith("#"):
            comments.append(line)
            continue
        cols = line.split("\t")
        if len(cols) != 10:
            raise ConlluError(line_no, f"expected 10 columns, got {len(cols)}")
        if _MULTIWORD_ID.match(cols[0]):
            if diagnostics is not None:
                diagnostics.append(f"line {line_no}: skipped multiword token {cols[0]}")
            continue
        if _EMPTY_NODE_ID.match(cols[0]):
            if diagnostics is not None:
                diagnostics.append(f"line {line_no}: skipped empty node {cols[0]}")
            continue
        if not _WORD_ID.match(cols[0]):
            raise ConlluError(line_no, f"non-numeric token index {cols[0]!r}")
        expected = len(tokens) + 1
        if int(cols[0]) != expected:
            raise ConlluError(line_no, f"token index {cols[0]} where {expected} expected")
        tokens.append((_token_from_columns(cols, line_no), line_no))

    flush()
    return trees


def emit_conllu(trees: Iterable[DepTree]) -> str:
    """Serialize trees back to CoNLL-U; inverse of :func:`parse_conllu`.

    Every sentence block is terminated by a blank line.
    """
    blocks = []
    for tree in trees:
        lines = list(tree.comments)
        for tok in tree.tokens:
            head = "_" if tok.head is None else str(tok.head)
            deprel = "_" if tok.deprel is None else tok.deprel
            lines.append(
                "\t".join(
                    (
                        str(tok.index),
                        tok.form,
                        tok.lemma,
                        tok.upos,
                        tok.xpos,
                        tok.feats,
                        head,
                        deprel,
                        "_",
                        tok.misc,
                    )
                )
            )
        blocks.append("\n".join(lines) + "\n\n")
    return "".join(blocks)


def _arcs(tree: DepTree) -> list[tuple[int, int]]:
    return [(t.index, t.head) for t in tree.tokens if t.head is not None and t.head != 0]


def _crosses(a: tuple[int, int], b: tuple[int, int]) -> bool:
    # Strict interleaving: arcs sharing an endpoint never cross.
    a_lo, a_hi = min(a), max(a)
    b_lo, b_hi = min(b), max(b)
    return a_lo < b_lo < a_hi < b_hi or b_lo < a_lo < b_hi < a_hi


def count_nonprojective_arcs(tree: DepTree) -> int:
    """Number of non-root arcs involved in at least one crossing."""
    if not tree.is_full:
        raise ValueError(f"{tree.sentence_id}: projectivity needs a full tree")
    arcs = _arcs(tree)
    crossing = 0
    for i, arc in enumerate(arcs):
        if any(_crosses(arc, other) for j, other in enumerate(arcs) if j != i):
            crossing += 1
    return crossing
