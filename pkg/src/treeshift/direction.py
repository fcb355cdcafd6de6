"""Dependency direction statistics and dominant directions.

A dependency points right (+1) when the head follows the modifier and left
(-1) otherwise.  A label has a dominant direction when more than
``threshold`` of its observed edges share one direction; only a fixed set of
content-bearing labels is considered, the rest are treated as free-order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .treebank import DepTree, universal_label

DIRECTION_LABELS: frozenset[str] = frozenset(
    {
        "nsubj",
        "obj",
        "iobj",
        "csubj",
        "ccomp",
        "xcomp",
        "obl",
        "vocative",
        "expl",
        "dislocated",
        "advcl",
        "advmod",
        "aux",
        "cop",
        "nmod",
        "appos",
        "nummod",
        "acl",
        "amod",
    }
)

DEFAULT_THRESHOLD = 0.75


def edge_direction(m: int, h: int) -> int:
    """+1 when the head is right of the modifier, -1 when left."""
    if h == 0:
        raise ValueError("root edges have no direction")
    if h == m:
        raise ValueError("a token cannot head itself")
    return 1 if h > m else -1


@dataclass
class DirectionStats:
    """Directional counts per (universal) label plus the dominance rule."""

    counts: dict[str, tuple[int, int]] = field(default_factory=dict)  # label -> (right, left)
    threshold: float = DEFAULT_THRESHOLD
    whitelist: frozenset[str] = DIRECTION_LABELS

    def observe(self, label: str, direction: int):
        right, left = self.counts.get(label, (0, 0))
        if direction == 1:
            right += 1
        else:
            left += 1
        self.counts[label] = (right, left)

    def total(self, label: str) -> int:
        right, left = self.counts.get(label, (0, 0))
        return right + left

    def alpha(self, label: str, direction: int) -> float:
        """Proportion of the label's edges pointing in ``direction``."""
        right, left = self.counts.get(label, (0, 0))
        total = right + left
        if total == 0:
            return 0.0
        return (right if direction == 1 else left) / total

    def dominant(self, label: str) -> int:
        """The label's dominant direction, or 0 when there is none."""
        label = universal_label(label) or ""
        if label not in self.whitelist:
            return 0
        for direction in (1, -1):
            if self.alpha(label, direction) > self.threshold:
                return direction
        return 0

    def merge(self, other: "DirectionStats") -> "DirectionStats":
        merged = DirectionStats(threshold=self.threshold, whitelist=self.whitelist)
        for stats in (self, other):
            for label, (right, left) in stats.counts.items():
                r0, l0 = merged.counts.get(label, (0, 0))
                merged.counts[label] = (r0 + right, l0 + left)
        return merged

    def save_tsv(self, path: str):
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(f"# threshold\t{self.threshold}\n")
            for label in sorted(self.counts):
                right, left = self.counts[label]
                handle.write(f"{label}\t{right}\t{left}\t{self.dominant(label)}\n")

    @classmethod
    def load_tsv(cls, path: str, whitelist: frozenset[str] = DIRECTION_LABELS) -> "DirectionStats":
        stats = cls(whitelist=whitelist)
        with open(path, encoding="utf-8") as handle:
            for line_no, line in enumerate(handle, start=1):
                line = line.rstrip("\n")
                if not line:
                    continue
                if line.startswith("#"):
                    cols = line[1:].split("\t")
                    if len(cols) == 2 and cols[0].strip() == "threshold":
                        stats.threshold = float(cols[1])
                    continue
                cols = line.split("\t")
                if len(cols) != 4:
                    raise ValueError(f"{path}:{line_no}: expected 4 columns")
                stats.counts[cols[0]] = (int(cols[1]), int(cols[2]))
        return stats


def direction_proportions(
    corpus: Iterable[DepTree],
    whitelist: frozenset[str] = DIRECTION_LABELS,
    threshold: float = DEFAULT_THRESHOLD,
) -> DirectionStats:
    """Count directions of all assigned, non-root edges with whitelisted labels."""
    stats = DirectionStats(threshold=threshold, whitelist=whitelist)
    for tree in corpus:
        for tok in tree.tokens:
            if tok.head is None or tok.head == 0 or tok.deprel is None:
                continue
            label = universal_label(tok.deprel)
            if label not in whitelist:
                continue
            stats.observe(label, edge_direction(tok.index, tok.head))
    return stats
