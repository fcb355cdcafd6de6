"""Combine three candidate parses per sentence into one projective tree.

Each labeled edge gets a weight: the sum of its proposers' coefficients (the
baseline system counts more for European targets, the two reordering systems
for the rest) times a factor that rewards agreement with the target language's
dominant direction for the edge's label.  A first-order projective decoder
then extracts the best single-root tree over those weights.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Sequence

from .direction import DirectionStats, edge_direction
from .treebank import DepTree, Token

Score = tuple[float, float, float]

_NEG: Score = (float("-inf"), 0.0, 0.0)
_ZERO: Score = (0.0, 0.0, 0.0)


@dataclass
class EnsembleConfig:
    european: bool
    stats_tgt: DirectionStats
    coefficients: tuple[float, float, float] | None = None  # override per system
    z_agree: float = 3.0
    z_disagree: float = 1.0
    z_neutral: float = 2.0

    def coefficient(self, system: int) -> float:
        """Vote weight of system 1 (baseline), 2 or 3 (reorderers)."""
        if self.coefficients is not None:
            return self.coefficients[system - 1]
        if self.european:
            return 2.0 if system == 1 else 1.0
        return 2.0 if system > 1 else 1.0

    def direction_factor(self, m: int, h: int, label: str) -> float:
        if h == 0:
            return self.z_neutral  # no dominant direction for root
        dominant = self.stats_tgt.dominant(label)
        if dominant == 0:
            return self.z_neutral
        return self.z_agree if dominant == edge_direction(m, h) else self.z_disagree


@dataclass
class EdgeWeightGrid:
    """Per-sentence labeled edge weights plus the best label per (m, h)."""

    n: int
    weights: dict[tuple[int, int, str], float] = field(default_factory=dict)
    best: dict[tuple[int, int], tuple[float, str]] = field(default_factory=dict)
    tokens: tuple[Token, ...] | None = None
    sentence_id: str = ""
    language: str = ""

    def weight(self, m: int, h: int) -> float:
        entry = self.best.get((m, h))
        return entry[0] if entry else 0.0

    def label(self, m: int, h: int) -> str | None:
        entry = self.best.get((m, h))
        return entry[1] if entry else None


def weight_edges(outputs: Sequence[DepTree], config: EnsembleConfig) -> EdgeWeightGrid:
    """Score every labeled edge proposed by at least one of the three parses."""
    if len(outputs) != 3:
        raise ValueError(f"expected exactly 3 candidate parses, got {len(outputs)}")
    first = outputs[0]
    for other in outputs[1:]:
        if len(other) != len(first) or other.forms() != first.forms():
            raise ValueError(f"{first.sentence_id}: candidate parses disagree on tokens")
    for tree in outputs:
        if not tree.is_full:
            raise ValueError(f"{tree.sentence_id}: candidate parses must be full trees")

    proposers: dict[tuple[int, int, str], list[int]] = {}
    for system, tree in enumerate(outputs, start=1):
        for tok in tree.tokens:
            key = (tok.index, tok.head, tok.deprel or "_")
            proposers.setdefault(key, []).append(system)

    grid = EdgeWeightGrid(
        n=len(first),
        tokens=first.tokens,
        sentence_id=first.sentence_id,
        language=first.language,
    )
    for (m, h, label), systems in proposers.items():
        votes = sum(config.coefficient(j) for j in systems)
        grid.weights[(m, h, label)] = config.direction_factor(m, h, label) * votes

    by_edge: dict[tuple[int, int], list[tuple[str, float, int]]] = {}
    for (m, h, label), weight in grid.weights.items():
        by_edge.setdefault((m, h), []).append((label, weight, min(proposers[(m, h, label)])))
    for edge, candidates in by_edge.items():
        label, weight, _ = min(candidates, key=lambda c: (-c[1], c[2], c[0]))
        grid.best[edge] = (weight, label)
    return grid


def _add(a: Score, b: Score) -> Score:
    return (a[0] + b[0], a[1] + b[1], a[2] + b[2])


def eisner_decode(grid: EdgeWeightGrid) -> DepTree:
    """Maximum-weight projective single-root tree over the grid.

    Unproposed edges weigh 0 but stay selectable, so decoding always completes.
    Weight ties prefer shorter attachments, then the leftmost head; the
    comparison rides along in the DP score tuples.
    """
    n = grid.n
    if n < 1:
        raise ValueError("cannot decode an empty sentence")

    def edge_score(dep: int, head: int) -> Score:
        distance = dep if head == 0 else abs(head - dep)
        return (grid.weight(dep, head), -float(distance), -float(head))

    L, R = 0, 1
    # comp[s][t][L]: span s..t headed at t; comp[s][t][R]: headed at s.
    comp = [[[_NEG, _NEG] for _ in range(n + 1)] for _ in range(n + 1)]
    inco = [[[_NEG, _NEG] for _ in range(n + 1)] for _ in range(n + 1)]
    comp_bp = [[[0, 0] for _ in range(n + 1)] for _ in range(n + 1)]
    inco_bp = [[[0, 0] for _ in range(n + 1)] for _ in range(n + 1)]
    for s in range(1, n + 1):
        comp[s][s][L] = comp[s][s][R] = _ZERO

    for span in range(1, n):
        for s in range(1, n - span + 1):
            t = s + span
            best: Score | None = None
            best_k = s
            for k in range(s, t):
                cand = _add(comp[s][k][R], comp[k + 1][t][L])
                if best is None or cand > best:
                    best, best_k = cand, k
            assert best is not None
            inco[s][t][L] = _add(best, edge_score(s, t))
            inco_bp[s][t][L] = best_k
            inco[s][t][R] = _add(best, edge_score(t, s))
            inco_bp[s][t][R] = best_k

            best, best_k = None, s
            for k in range(s, t):
                cand = _add(comp[s][k][L], inco[k][t][L])
                if best is None or cand > best:
                    best, best_k = cand, k
            comp[s][t][L] = best
            comp_bp[s][t][L] = best_k

            best, best_k = None, s + 1
            for k in range(s + 1, t + 1):
                cand = _add(inco[s][k][R], comp[k][t][R])
                if best is None or cand > best:
                    best, best_k = cand, k
            comp[s][t][R] = best
            comp_bp[s][t][R] = best_k

    best_total: Score | None = None
    best_root = 1
    for r in range(1, n + 1):
        cand = _add(_add(comp[1][r][L], comp[r][n][R]), edge_score(r, 0))
        if best_total is None or cand > best_total:
            best_total, best_root = cand, r

    heads = [0] * (n + 1)

    def walk_comp(s: int, t: int, direction: int):
        if s == t:
            return
        k = comp_bp[s][t][direction]
        if direction == L:
            walk_comp(s, k, L)
            walk_inco(k, t, L)
        else:
            walk_inco(s, k, R)
            walk_comp(k, t, R)

    def walk_inco(s: int, t: int, direction: int):
        if direction == L:
            heads[s] = t
        else:
            heads[t] = s
        k = inco_bp[s][t][direction]
        walk_comp(s, k, R)
        walk_comp(k + 1, t, L)

    heads[best_root] = 0
    walk_comp(1, best_root, L)
    walk_comp(best_root, n, R)

    tokens = grid.tokens or tuple(Token(index=i, form=f"w{i}") for i in range(1, n + 1))
    new_tokens = []
    for tok in tokens:
        head = heads[tok.index]
        new_tokens.append(replace(tok, head=head, deprel=grid.label(tok.index, head)))
    return DepTree(
        sentence_id=grid.sentence_id or "decoded",
        language=grid.language,
        tokens=tuple(new_tokens),
    )


def decoded_total_weight(grid: EdgeWeightGrid, tree: DepTree) -> float:
    """Plain edge-weight total of a decoded tree under the grid."""
    return sum(grid.weight(tok.index, tok.head) for tok in tree.tokens)


def ensemble_combine(outputs: Sequence[DepTree], config: EnsembleConfig) -> DepTree:
    """Weight the three parses' edges and decode the best projective tree."""
    return eisner_decode(weight_edges(outputs, config))
