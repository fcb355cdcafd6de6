"""Dependency projection across 1-to-1 alignments and the dense-structure filter."""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Iterable, Sequence

from .align_lex import AlignmentSet
from .treebank import DepTree, Token

ROOT_LABEL = "root"


@dataclass(frozen=True)
class DensityStats:
    """How much of a projected sentence received heads."""

    n: int
    assigned: int
    max_full_span: int

    @classmethod
    def from_tree(cls, tree: DepTree) -> "DensityStats":
        assigned = sum(1 for t in tree.tokens if t.head is not None)
        best = run = 0
        for tok in tree.tokens:
            run = run + 1 if tok.head is not None else 0
            best = max(best, run)
        return cls(n=len(tree), assigned=assigned, max_full_span=best)

    @property
    def ratio(self) -> float:
        return self.assigned / self.n if self.n else 0.0


def project_tree(
    src: DepTree,
    tgt_tokens: Sequence[Token],
    align: AlignmentSet,
    language: str = "",
) -> DepTree:
    """Copy source heads/labels onto aligned target tokens; the rest stay headless.

    The source root's image becomes the target root.  Edges are admitted in
    target index order and one that would close a cycle among already-assigned
    edges is dropped, keeping the output a partial forest.
    """
    if not src.is_full:
        raise ValueError(f"{src.sentence_id}: projection needs a full source tree")
    src_to_tgt = align.src_to_tgt()  # raises unless 1-to-1
    tgt_to_src = {t: s for s, t in src_to_tgt.items()}
    src_head = {t.index: t.head for t in src.tokens}
    src_label = {t.index: t.deprel for t in src.tokens}

    assigned: dict[int, int] = {}

    def closes_cycle(dep: int, head: int) -> bool:
        node = head
        while node in assigned:
            node = assigned[node]
            if node == dep:
                return True
        return False

    labels: dict[int, str | None] = {}
    for t_index in range(1, len(tgt_tokens) + 1):
        m = tgt_to_src.get(t_index)
        if m is None:
            continue
        h = src_head[m]
        if h == 0:
            assigned[t_index] = 0
            labels[t_index] = ROOT_LABEL
        elif h in src_to_tgt:
            t_head = src_to_tgt[h]
            if not closes_cycle(t_index, t_head):
                assigned[t_index] = t_head
                labels[t_index] = src_label[m]

    new_tokens = []
    for pos, tok in enumerate(tgt_tokens, start=1):
        head = assigned.get(pos)
        new_tokens.append(
            replace(tok, index=pos, head=head, deprel=labels.get(pos) if head is not None else None)
        )
    return DepTree(
        sentence_id=src.sentence_id,
        language=language,
        tokens=tuple(new_tokens),
    )


def is_dense(tree: DepTree, min_ratio: float = 0.8, min_span: int = 5) -> bool:
    stats = DensityStats.from_tree(tree)
    return stats.ratio >= min_ratio or stats.max_full_span >= min_span


def dense_filter(
    partials: Iterable[DepTree],
    min_ratio: float = 0.8,
    min_span: int = 5,
) -> list[DepTree]:
    """Keep sentences where >= ``min_ratio`` of tokens got heads or a fully
    headed run of >= ``min_span`` tokens exists."""
    return [tree for tree in partials if is_dense(tree, min_ratio, min_span)]
