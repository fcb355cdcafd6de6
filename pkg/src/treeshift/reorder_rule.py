"""Rule-based reordering: flip dependency sides toward the target language's
dominant directions, then re-linearize each tree.

A side of +1 places the modifier's subtree left of its head (head follows),
-1 places it right.  Within a side, modifiers keep their original order.
"""

from __future__ import annotations

from dataclasses import replace
from typing import Iterable

from .direction import DirectionStats, edge_direction
from .treebank import DepTree, universal_label


def plan_sides(
    tree: DepTree,
    stats_src: DirectionStats,
    stats_tgt: DirectionStats,
) -> dict[int, int]:
    """Pick a side for every non-root token.

    A dependency flips when source and target disagree on its label's dominant
    direction and the target's dominant direction is opposite to the edge's
    current one; otherwise the edge keeps its side.
    """
    if not tree.is_full:
        raise ValueError(f"{tree.sentence_id}: side planning needs a full tree")
    sides: dict[int, int] = {}
    for tok in tree.tokens:
        if tok.head == 0:
            continue
        d = edge_direction(tok.index, tok.head)
        label = universal_label(tok.deprel) or ""
        lam_src = stats_src.dominant(label)
        lam_tgt = stats_tgt.dominant(label)
        if lam_src != lam_tgt and lam_tgt == -d:
            sides[tok.index] = -d
        else:
            sides[tok.index] = d
    return sides


def linearize(tree: DepTree, sides: dict[int, int]) -> DepTree:
    """Rebuild the sentence around each head from the side assignment.

    Emission is recursive: left-side subtrees in original order, the head,
    then right-side subtrees in original order.  The output is projective by
    construction.
    """
    children = tree.children()
    order: list[int] = []

    def emit(node: int):
        deps = children.get(node, [])
        for dep in deps:  # children() yields original order
            if sides[dep] == 1:
                emit(dep)
        order.append(node)
        for dep in deps:
            if sides[dep] == -1:
                emit(dep)

    root = tree.root_index
    if root is None:
        raise ValueError(f"{tree.sentence_id}: no unique root")
    emit(root)

    new_index = {old: new for new, old in enumerate(order, start=1)}
    new_tokens = []
    for old in order:
        tok = tree.tokens[old - 1]
        head = 0 if tok.head == 0 else new_index[tok.head]
        new_tokens.append(replace(tok, index=new_index[old], head=head))
    return tree.with_tokens(new_tokens)


def reorder_tree(
    tree: DepTree,
    stats_src: DirectionStats,
    stats_tgt: DirectionStats,
) -> DepTree:
    return linearize(tree, plan_sides(tree, stats_src, stats_tgt))


def reorder_corpus(
    trees: Iterable[DepTree],
    stats_src: DirectionStats,
    stats_tgt: DirectionStats,
    diagnostics: list[str] | None = None,
) -> list[DepTree]:
    """Reorder every full tree; partial trees pass through unchanged."""
    out = []
    for tree in trees:
        if tree.is_full:
            out.append(reorder_tree(tree, stats_src, stats_tgt))
        else:
            if diagnostics is not None:
                diagnostics.append(f"{tree.sentence_id}: left unordered (partial tree)")
            out.append(tree)
    return out
