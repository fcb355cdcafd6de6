"""Word alignments, translation lexicons, and treebank code-switching.

Alignments arrive in Pharaoh format ("i-j" pairs, 0-based on disk); links are
stored 1-based.  A lexicon maps (language, source form) to the most frequent
aligned target form; code-switching swaps forms in place and leaves the tree
structure untouched.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, replace
from typing import Iterable, Sequence

from .treebank import DepTree

_PHARAOH_PAIR = re.compile(r"^(\d+)-(\d+)$")

# Soft POS consistency: a link survives when the tags match exactly, fall in
# the same confusion set, or either side is the catch-all X.
DEFAULT_CONFUSION_SETS: tuple[frozenset[str], ...] = (
    frozenset({"NOUN", "PROPN", "PRON"}),
    frozenset({"VERB", "AUX"}),
)
POS_WILDCARD = "X"


class AlignmentError(ValueError):
    """Malformed alignment input, pointing at the offending line."""

    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


@dataclass(frozen=True)
class AlignmentSet:
    """Links between one source sentence and one target sentence, 1-based."""

    src_len: int
    tgt_len: int
    links: frozenset[tuple[int, int]]

    def __post_init__(self):
        object.__setattr__(self, "links", frozenset(self.links))
        for s, t in self.links:
            if not 1 <= s <= self.src_len:
                raise ValueError(f"source index {s} outside [1, {self.src_len}]")
            if not 1 <= t <= self.tgt_len:
                raise ValueError(f"target index {t} outside [1, {self.tgt_len}]")

    @property
    def is_one_to_one(self) -> bool:
        src_side = [s for s, _ in self.links]
        tgt_side = [t for _, t in self.links]
        return len(set(src_side)) == len(src_side) and len(set(tgt_side)) == len(tgt_side)

    def transpose(self) -> "AlignmentSet":
        return AlignmentSet(
            src_len=self.tgt_len,
            tgt_len=self.src_len,
            links=frozenset((t, s) for s, t in self.links),
        )

    def src_to_tgt(self) -> dict[int, int]:
        """Source index -> target index; requires a 1-to-1 link set."""
        if not self.is_one_to_one:
            raise ValueError("alignment is not 1-to-1")
        return {s: t for s, t in self.links}


def parse_alignments(
    lines: str | Iterable[str],
    pair_sizes: Sequence[tuple[int, int]],
) -> list[AlignmentSet]:
    """Read Pharaoh alignment lines, one per sentence pair, shifting to 1-based."""
    if isinstance(lines, str):
        rows = lines.split("\n")
        if len(rows) == len(pair_sizes) + 1 and rows[-1] == "":
            rows.pop()
    else:
        rows = [line.rstrip("\n") for line in lines]
    if len(rows) != len(pair_sizes):
        raise ValueError(
            f"{len(rows)} alignment lines for {len(pair_sizes)} sentence pairs"
        )
    out = []
    for line_no, (row, (src_len, tgt_len)) in enumerate(zip(rows, pair_sizes), start=1):
        links = set()
        for token in row.split():
            m = _PHARAOH_PAIR.match(token)
            if not m:
                raise AlignmentError(line_no, f"bad link token {token!r}")
            s, t = int(m.group(1)) + 1, int(m.group(2)) + 1
            if s > src_len or t > tgt_len:
                raise AlignmentError(
                    line_no, f"link {token} outside sentence pair of size ({src_len}, {tgt_len})"
                )
            links.add((s, t))
        out.append(AlignmentSet(src_len, tgt_len, frozenset(links)))
    return out


def emit_alignments(aligns: Iterable[AlignmentSet]) -> str:
    """Inverse of :func:`parse_alignments` (0-based on disk, sorted)."""
    lines = []
    for align in aligns:
        pairs = sorted(align.links)
        lines.append(" ".join(f"{s - 1}-{t - 1}" for s, t in pairs))
    return "\n".join(lines) + "\n"


def intersect(a: AlignmentSet, b: AlignmentSet) -> AlignmentSet:
    """Keep links present in both directions; ``b`` runs target -> source."""
    if (a.src_len, a.tgt_len) != (b.tgt_len, b.src_len):
        raise ValueError(
            f"size mismatch: forward ({a.src_len}, {a.tgt_len}) vs "
            f"reverse ({b.src_len}, {b.tgt_len})"
        )
    return AlignmentSet(a.src_len, a.tgt_len, a.links & b.transpose().links)


def soft_pos_filter(
    align: AlignmentSet,
    src_upos: Sequence[str],
    tgt_upos: Sequence[str],
    confusion_sets: Sequence[frozenset[str]] = DEFAULT_CONFUSION_SETS,
) -> AlignmentSet:
    """Drop links whose endpoint POS tags are incompatible."""
    if len(src_upos) != align.src_len or len(tgt_upos) != align.tgt_len:
        raise ValueError("POS sequences do not match the alignment sizes")

    def compatible(p: str, q: str) -> bool:
        if p == q or POS_WILDCARD in (p, q):
            return True
        return any(p in group and q in group for group in confusion_sets)

    kept = frozenset(
        (s, t) for s, t in align.links if compatible(src_upos[s - 1], tgt_upos[t - 1])
    )
    return AlignmentSet(align.src_len, align.tgt_len, kept)


def load_confusion_sets(path: str) -> tuple[frozenset[str], ...]:
    """One confusion set per line, tags space-separated; '#' comments allowed."""
    groups = []
    with open(path, encoding="utf-8") as handle:
        for line in handle:
            line = line.split("#", 1)[0].strip()
            if line:
                groups.append(frozenset(line.split()))
    return tuple(groups)


class TranslationLexicon:
    """Counts of aligned target forms per (language, source form), lowercased."""

    def __init__(self):
        self._counts: dict[tuple[str, str], Counter] = {}

    def add(self, language: str, src_form: str, tgt_form: str, count: int = 1):
        key = (language, src_form.lower())
        self._counts.setdefault(key, Counter())[tgt_form.lower()] += count

    def lookup(self, language: str, src_form: str) -> str | None:
        """Most frequent aligned form; ties break to the smaller form."""
        candidates = self._counts.get((language, src_form.lower()))
        if not candidates:
            return None
        return min(candidates.items(), key=lambda item: (-item[1], item[0]))[0]

    def merge(self, other: "TranslationLexicon") -> "TranslationLexicon":
        merged = TranslationLexicon()
        for lex in (self, other):
            for (language, src), cands in lex._counts.items():
                for tgt, count in cands.items():
                    merged.add(language, src, tgt, count)
        return merged

    def __len__(self) -> int:
        return len(self._counts)

    def save_tsv(self, path: str):
        with open(path, "w", encoding="utf-8") as handle:
            for (language, src), cands in sorted(self._counts.items()):
                for tgt, count in sorted(cands.items()):
                    handle.write(f"{language}\t{src}\t{tgt}\t{count}\n")

    @classmethod
    def load_tsv(cls, path: str) -> "TranslationLexicon":
        lex = cls()
        with open(path, encoding="utf-8") as handle:
            for line_no, line in enumerate(handle, start=1):
                line = line.rstrip("\n")
                if not line:
                    continue
                cols = line.split("\t")
                if len(cols) != 4:
                    raise ValueError(f"{path}:{line_no}: expected 4 columns")
                lex.add(cols[0], cols[1], cols[2], int(cols[3]))
        return lex


def build_lexicon(
    pairs: Iterable[tuple[DepTree | Sequence[str], Sequence[str], AlignmentSet]],
    language: str = "",
) -> TranslationLexicon:
    """Count aligned form pairs; the source side may be trees or bare form lists."""
    lex = TranslationLexicon()
    for src, tgt_forms, align in pairs:
        if isinstance(src, DepTree):
            src_forms = src.forms()
            lang = src.language
        else:
            src_forms = list(src)
            lang = language
        for s, t in align.links:
            lex.add(lang, src_forms[s - 1], tgt_forms[t - 1])
    return lex


def code_switch(tree: DepTree, lexicon: TranslationLexicon) -> DepTree:
    """Swap each form for its lexicon translation; keep everything else."""
    new_tokens = []
    for tok in tree.tokens:
        translated = lexicon.lookup(tree.language, tok.form)
        if translated is not None and translated != tok.form:
            tok = replace(tok, form=translated)
        new_tokens.append(tok)
    return tree.with_tokens(new_tokens)
