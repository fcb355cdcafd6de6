"""Scoring: attachment accuracy without punctuation, per-head-POS f-scores,
and POS-trigram similarity between corpora."""

from __future__ import annotations

import math
from collections import Counter
from typing import Iterable, Sequence

from .treebank import DepTree, universal_label

TRIGRAM_START = "<s>"
TRIGRAM_END = "</s>"


def _check_aligned(gold: Sequence[DepTree], pred: Sequence[DepTree]):
    if len(gold) != len(pred):
        raise ValueError(f"corpora differ in size: {len(gold)} vs {len(pred)} sentences")
    for g, p in zip(gold, pred):
        if len(g) != len(p):
            raise ValueError(
                f"{g.sentence_id}: sentence length mismatch ({len(g)} vs {len(p)} tokens)"
            )


def _is_punct(token, by_deprel: bool) -> bool:
    if by_deprel:
        return universal_label(token.deprel) == "punct"
    return token.upos == "PUNCT"


def uas_las(
    gold: Sequence[DepTree],
    pred: Sequence[DepTree],
    punct_by_deprel: bool = False,
) -> tuple[float, float]:
    """Attachment scores over non-punctuation tokens (punctuation judged on gold)."""
    _check_aligned(gold, pred)
    scored = head_hits = label_hits = 0
    for g, p in zip(gold, pred):
        for gt, pt in zip(g.tokens, p.tokens):
            if gt.head is None or _is_punct(gt, punct_by_deprel):
                continue
            scored += 1
            if pt.head == gt.head:
                head_hits += 1
                if universal_label(pt.deprel) == universal_label(gt.deprel):
                    label_hits += 1
    if scored == 0:
        raise ValueError("no scorable tokens")
    return head_hits / scored, label_hits / scored


def _edges_with_head_tag(corpus: Sequence[DepTree], head_upos: str) -> set[tuple[int, int, int]]:
    edges = set()
    for sent_no, tree in enumerate(corpus):
        for tok in tree.tokens:
            if tok.head is None or tok.head == 0:
                continue
            if tree.tokens[tok.head - 1].upos == head_upos:
                edges.add((sent_no, tok.index, tok.head))
    return edges


def head_pos_fscore(
    gold: Sequence[DepTree],
    pred: Sequence[DepTree],
    head_upos: str,
) -> float:
    """Unlabeled attachment f-score of edges headed by a given POS.

    Precision filters by the predicted tree's head tag, recall by the gold
    tree's; 0.0 when neither side has such edges.
    """
    _check_aligned(gold, pred)
    gold_edges = _edges_with_head_tag(gold, head_upos)
    pred_edges = _edges_with_head_tag(pred, head_upos)
    if not gold_edges and not pred_edges:
        return 0.0
    hits = len(gold_edges & pred_edges)
    precision = hits / len(pred_edges) if pred_edges else 0.0
    recall = hits / len(gold_edges) if gold_edges else 0.0
    if precision + recall == 0.0:
        return 0.0
    return 2 * precision * recall / (precision + recall)


def pos_trigram_vector(corpus: Iterable[DepTree]) -> Counter:
    """Counts of POS trigrams with start/end padding per sentence."""
    counts: Counter = Counter()
    for tree in corpus:
        tags = [TRIGRAM_START] + tree.upos_tags() + [TRIGRAM_END]
        for i in range(len(tags) - 2):
            counts[tuple(tags[i : i + 3])] += 1
    return counts


def pos_trigram_cosine(corpus_a: Sequence[DepTree], corpus_b: Sequence[DepTree]) -> float:
    """Cosine of the two corpora's POS trigram count vectors."""
    vec_a = pos_trigram_vector(corpus_a)
    vec_b = pos_trigram_vector(corpus_b)
    if not vec_a or not vec_b:
        raise ValueError("cannot compare an empty corpus")
    dot = sum(count * vec_b.get(gram, 0) for gram, count in vec_a.items())
    norm_a = math.sqrt(sum(c * c for c in vec_a.values()))
    norm_b = math.sqrt(sum(c * c for c in vec_b.values()))
    return dot / (norm_a * norm_b)
