"""Training data for the reordering classifier.

From each aligned sentence pair we derive a permutation of the source tokens
that follows the target-side order, apply it to the source parse, and emit
one labeled instance per dependency recording where the head ends up.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Iterable, Sequence

from .align_lex import AlignmentSet
from .direction import edge_direction
from .treebank import DepTree, count_nonprojective_arcs, emit_conllu, parse_conllu


@dataclass(frozen=True)
class ReorderMapping:
    """Bijection sending each source position to its reordered position."""

    mu: tuple[int, ...]  # mu[j-1] = new position of source token j, 1-based

    def __post_init__(self):
        if sorted(self.mu) != list(range(1, len(self.mu) + 1)):
            raise ValueError("mapping is not a permutation of 1..n")

    def __len__(self) -> int:
        return len(self.mu)

    def of(self, index: int) -> int:
        return self.mu[index - 1]

    def apply_to(self, items: Sequence) -> list:
        """Return ``items`` rearranged so item j lands at position mu(j)."""
        out = [None] * len(self.mu)
        for j, item in enumerate(items, start=1):
            out[self.of(j) - 1] = item
        return out


@dataclass(frozen=True)
class ReorderInstance:
    """One dependency with its original and reordered head directions."""

    sentence_id: str
    language: str
    m: int
    h: int
    label: str
    original_direction: int
    gold_direction: int


def derive_mapping(src_len: int, align: AlignmentSet) -> ReorderMapping | None:
    """Build the reordering permutation from a 1-to-1 alignment.

    Returns None (reject) when fewer than half of the source tokens are
    aligned.  Tokens sort by an anchor target position: their own link when
    aligned, otherwise the link of the closest preceding aligned token (0
    before the first one).  Ties keep original order.
    """
    src_to_tgt = align.src_to_tgt()
    if len(src_to_tgt) < math.ceil(src_len / 2):
        return None
    anchors = []
    last = 0
    for j in range(1, src_len + 1):
        if j in src_to_tgt:
            last = src_to_tgt[j]
        anchors.append(last)
    ranked = sorted(range(1, src_len + 1), key=lambda j: (anchors[j - 1], j))
    mu = [0] * src_len
    for position, j in enumerate(ranked, start=1):
        mu[j - 1] = position
    return ReorderMapping(tuple(mu))


def apply_mapping(tree: DepTree, mapping: ReorderMapping) -> DepTree | None:
    """Permute a full tree; reject (None) when crossings increase."""
    if len(tree) != len(mapping):
        raise ValueError(
            f"{tree.sentence_id}: tree has {len(tree)} tokens, mapping {len(mapping)}"
        )
    if not tree.is_full:
        raise ValueError(f"{tree.sentence_id}: mapping application needs a full tree")
    before = count_nonprojective_arcs(tree)
    slots: list = [None] * len(tree)
    for tok in tree.tokens:
        head = 0 if tok.head == 0 else mapping.of(tok.head)
        slots[mapping.of(tok.index) - 1] = replace(tok, index=mapping.of(tok.index), head=head)
    permuted = tree.with_tokens(slots)
    if count_nonprojective_arcs(permuted) > before:
        return None
    return permuted


def extract_instances(
    tree: DepTree,
    mapping: ReorderMapping,
    language: str | None = None,
) -> list[ReorderInstance]:
    """One instance per non-root token of the *original* tree."""
    lang = tree.language if language is None else language
    instances = []
    for tok in tree.tokens:
        if tok.head == 0 or tok.head is None:
            continue
        gold = 1 if mapping.of(tok.head) > mapping.of(tok.index) else -1
        instances.append(
            ReorderInstance(
                sentence_id=tree.sentence_id,
                language=lang,
                m=tok.index,
                h=tok.head,
                label=tok.deprel or "dep",
                original_direction=edge_direction(tok.index, tok.head),
                gold_direction=gold,
            )
        )
    return instances


def prepare_training_data(
    src_trees: Sequence[DepTree],
    alignments: Sequence[AlignmentSet],
    diagnostics: list[str] | None = None,
) -> tuple[list[ReorderInstance], list[DepTree]]:
    """Run the full pipeline: mapping, projectivity filter, instance extraction.

    Returns the instances plus the original source trees they reference.
    """
    if len(src_trees) != len(alignments):
        raise ValueError("one alignment per source tree required")
    instances: list[ReorderInstance] = []
    kept: list[DepTree] = []
    for tree, align in zip(src_trees, alignments):
        mapping = derive_mapping(len(tree), align)
        if mapping is None:
            if diagnostics is not None:
                diagnostics.append(f"{tree.sentence_id}: rejected (too few aligned tokens)")
            continue
        if apply_mapping(tree, mapping) is None:
            if diagnostics is not None:
                diagnostics.append(f"{tree.sentence_id}: rejected (crossings increased)")
            continue
        instances.extend(extract_instances(tree, mapping))
        kept.append(tree)
    return instances, kept


INSTANCE_COLUMNS = ("language", "sentence_id", "m", "h", "label", "original_direction", "gold_direction")


def save_instances(instances: Iterable[ReorderInstance], path: str):
    with open(path, "w", encoding="utf-8") as handle:
        for inst in instances:
            handle.write(
                "\t".join(
                    (
                        inst.language,
                        inst.sentence_id,
                        str(inst.m),
                        str(inst.h),
                        inst.label,
                        str(inst.original_direction),
                        str(inst.gold_direction),
                    )
                )
                + "\n"
            )


def load_instances(path: str) -> list[ReorderInstance]:
    instances = []
    with open(path, encoding="utf-8") as handle:
        for line_no, line in enumerate(handle, start=1):
            line = line.rstrip("\n")
            if not line:
                continue
            cols = line.split("\t")
            if len(cols) != len(INSTANCE_COLUMNS):
                raise ValueError(f"{path}:{line_no}: expected {len(INSTANCE_COLUMNS)} columns")
            instances.append(
                ReorderInstance(
                    language=cols[0],
                    sentence_id=cols[1],
                    m=int(cols[2]),
                    h=int(cols[3]),
                    label=cols[4],
                    original_direction=int(cols[5]),
                    gold_direction=int(cols[6]),
                )
            )
    return instances


def save_sentences(trees: Iterable[DepTree], path: str):
    """Write trees for the encoder, tagging each with its language id."""
    tagged = []
    for tree in trees:
        comments = list(tree.comments)
        if tree.language and not any(c.lstrip("# ").startswith("language") for c in comments):
            comments.insert(0, f"# language = {tree.language}")
        if not any(c.lstrip("# ").startswith("sent_id") for c in comments):
            comments.insert(0, f"# sent_id = {tree.sentence_id}")
        tagged.append(replace(tree, comments=tuple(comments)))
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(emit_conllu(tagged))


def load_sentences(path: str, language: str = "") -> list[DepTree]:
    with open(path, encoding="utf-8") as handle:
        return parse_conllu(handle.read(), language=language)
