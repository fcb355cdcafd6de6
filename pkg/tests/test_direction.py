import random

import pytest

from treeshift.direction import (
    DirectionStats,
    direction_proportions,
    edge_direction,
)
from treeshift.treebank import DepTree, Token

from conftest import random_full_tree


def corpus_with_edges(label_dirs):
    """One flat tree per (label, direction) observation."""
    trees = []
    for k, (label, d) in enumerate(label_dirs):
        if d == 1:
            tokens = (
                Token(index=1, form="m", head=2, deprel=label),
                Token(index=2, form="h", head=0, deprel="root"),
            )
        else:
            tokens = (
                Token(index=1, form="h", head=0, deprel="root"),
                Token(index=2, form="m", head=1, deprel=label),
            )
        trees.append(DepTree(sentence_id=f"s{k}", language="xx", tokens=tokens))
    return trees


class TestEdgeDirection:
    def test_head_right(self):
        assert edge_direction(1, 2) == 1

    def test_object_of_figure_sentence(self):
        assert edge_direction(5, 2) == -1

    def test_nominal_modifier_of_figure_sentence(self):
        assert edge_direction(9, 5) == -1

    def test_root_edge_rejected(self):
        with pytest.raises(ValueError):
            edge_direction(3, 0)

    def test_self_head_rejected(self):
        with pytest.raises(ValueError):
            edge_direction(3, 3)


class TestProportions:
    def test_unanimous_label(self):
        stats = direction_proportions(corpus_with_edges([("amod", 1)] * 4))
        assert stats.alpha("amod", 1) == 1.0
        assert stats.dominant("amod") == 1

    def test_threshold_is_strict(self):
        stats = direction_proportions(corpus_with_edges([("obj", 1)] * 3 + [("obj", -1)]))
        assert stats.alpha("obj", 1) == 0.75
        assert stats.dominant("obj") == 0

    def test_just_above_threshold(self):
        stats = direction_proportions(corpus_with_edges([("obj", 1)] * 19 + [("obj", -1)] * 6))
        assert stats.alpha("obj", 1) == 0.76
        assert stats.dominant("obj") == 1

    def test_non_whitelisted_label_never_dominant(self):
        stats = direction_proportions(corpus_with_edges([("conj", 1)] * 10))
        assert stats.dominant("conj") == 0

    def test_subtypes_collapse(self):
        stats = direction_proportions(corpus_with_edges([("nmod:poss", 1)] * 4))
        assert stats.counts.get("nmod") == (4, 0)
        assert stats.dominant("nmod") == 1
        assert stats.dominant("nmod:poss") == 1

    def test_unseen_label_neutral(self):
        stats = direction_proportions([])
        assert stats.dominant("obj") == 0
        assert stats.alpha("obj", 1) == 0.0

    def test_root_and_headless_edges_ignored(self):
        tokens = (
            Token(index=1, form="a", head=0, deprel="root"),
            Token(index=2, form="b"),
        )
        tree = DepTree(sentence_id="s", language="xx", tokens=tokens)
        assert direction_proportions([tree]).counts == {}

    def test_alpha_complementarity(self):
        rng = random.Random(9)
        trees = [random_full_tree(rng, rng.randint(2, 10)) for _ in range(50)]
        stats = direction_proportions(trees)
        for label in stats.counts:
            assert stats.alpha(label, 1) + stats.alpha(label, -1) == pytest.approx(1.0)
            lam = stats.dominant(label)
            if lam != 0:
                assert stats.alpha(label, lam) > 0.75

    def test_order_invariance(self):
        rng = random.Random(10)
        trees = [random_full_tree(rng, rng.randint(2, 8)) for _ in range(30)]
        shuffled = list(trees)
        rng.shuffle(shuffled)
        assert direction_proportions(trees).counts == direction_proportions(shuffled).counts

    def test_merge_equals_concatenation(self):
        rng = random.Random(12)
        a = [random_full_tree(rng, rng.randint(2, 8)) for _ in range(20)]
        b = [random_full_tree(rng, rng.randint(2, 8)) for _ in range(20)]
        merged = direction_proportions(a).merge(direction_proportions(b))
        assert merged.counts == direction_proportions(a + b).counts


class TestPersistence:
    def test_tsv_round_trip(self, tmp_path):
        stats = DirectionStats(counts={"obj": (4, 0), "amod": (1, 9)}, threshold=0.6)
        path = tmp_path / "stats.tsv"
        stats.save_tsv(str(path))
        again = DirectionStats.load_tsv(str(path))
        assert again.counts == stats.counts
        assert again.threshold == 0.6
        assert again.dominant("amod") == -1

    def test_tsv_lambda_column(self, tmp_path):
        stats = DirectionStats(counts={"obj": (4, 0)})
        path = tmp_path / "stats.tsv"
        stats.save_tsv(str(path))
        rows = [line.split("\t") for line in path.read_text().splitlines() if not line.startswith("#")]
        assert rows == [["obj", "4", "0", "1"]]
