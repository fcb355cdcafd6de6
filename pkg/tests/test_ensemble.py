import itertools
import random

import pytest

from treeshift.direction import DirectionStats
from treeshift.ensemble import (
    EdgeWeightGrid,
    EnsembleConfig,
    decoded_total_weight,
    eisner_decode,
    ensemble_combine,
    weight_edges,
)
from treeshift.treebank import DepTree, Token, count_nonprojective_arcs

from conftest import spans_contiguous

NEUTRAL = DirectionStats()  # no observations: every label neutral


def tree_from(heads, labels=None, forms=None, sentence_id="s"):
    n = len(heads)
    labels = labels or ["root" if h == 0 else "dep" for h in heads]
    forms = forms or [f"w{i}" for i in range(1, n + 1)]
    tokens = [
        Token(index=i, form=forms[i - 1], head=heads[i - 1], deprel=labels[i - 1])
        for i in range(1, n + 1)
    ]
    return DepTree(sentence_id=sentence_id, language="xx", tokens=tuple(tokens))


def grid_from(n, weights):
    """weights: {(m, h): w} single-label grid."""
    grid = EdgeWeightGrid(n=n)
    for (m, h), w in weights.items():
        grid.weights[(m, h, "dep")] = w
        grid.best[(m, h)] = (w, "dep")
    return grid


def brute_force_best(n, weights):
    """Exhaustive max total weight over projective single-root trees."""
    best = float("-inf")
    choices = [[h for h in range(n + 1) if h != m] for m in range(1, n + 1)]
    for heads in itertools.product(*choices):
        if sum(1 for h in heads if h == 0) != 1:
            continue
        visited_ok = True
        for start in range(1, n + 1):
            node, steps = start, 0
            while node != 0 and steps <= n:
                node = heads[node - 1]
                steps += 1
            if node != 0:
                visited_ok = False
                break
        if not visited_ok:
            continue
        tree = tree_from(list(heads))
        if not spans_contiguous(tree):
            continue
        total = sum(weights.get((m, h), 0.0) for m, h in enumerate(heads, start=1))
        best = max(best, total)
    return best


class TestCoefficients:
    def test_european_favors_baseline(self):
        config = EnsembleConfig(european=True, stats_tgt=NEUTRAL)
        assert [config.coefficient(j) for j in (1, 2, 3)] == [2.0, 1.0, 1.0]

    def test_non_european_favors_reorderers(self):
        config = EnsembleConfig(european=False, stats_tgt=NEUTRAL)
        assert [config.coefficient(j) for j in (1, 2, 3)] == [1.0, 2.0, 2.0]

    def test_override(self):
        config = EnsembleConfig(european=True, stats_tgt=NEUTRAL, coefficients=(5.0, 1.0, 1.0))
        assert config.coefficient(1) == 5.0


class TestWeightEdges:
    def test_agreeing_direction_single_baseline_vote(self):
        # European target; edge only from system 1; dominant = edge direction.
        stats = DirectionStats(counts={"obj": (4, 0)})  # dominant +1
        config = EnsembleConfig(european=True, stats_tgt=stats)
        base = tree_from([2, 0], labels=["obj", "root"])
        other = tree_from([0, 1], labels=["root", "obj"])
        grid = weight_edges([base, other, other], config)
        assert grid.weights[(1, 2, "obj")] == 6.0  # z=3 times c=2

    def test_neutral_label_two_reorderer_votes(self):
        config = EnsembleConfig(european=False, stats_tgt=NEUTRAL)
        agree = tree_from([2, 0], labels=["obj", "root"])
        lone = tree_from([0, 1], labels=["root", "obj"])
        grid = weight_edges([lone, agree, agree], config)
        assert grid.weights[(1, 2, "obj")] == 8.0  # z=2 times (2+2)

    def test_opposing_direction_unanimous(self):
        stats = DirectionStats(counts={"obj": (0, 4)})  # dominant -1
        config = EnsembleConfig(european=True, stats_tgt=stats)
        tree = tree_from([2, 0], labels=["obj", "root"])  # edge direction +1
        grid = weight_edges([tree, tree, tree], config)
        assert grid.weights[(1, 2, "obj")] == 4.0  # z=1 times (2+1+1)

    def test_root_edges_use_neutral_factor(self):
        config = EnsembleConfig(european=True, stats_tgt=NEUTRAL)
        tree = tree_from([0, 1], labels=["root", "dep"])
        grid = weight_edges([tree, tree, tree], config)
        assert grid.weights[(1, 0, "root")] == 8.0  # z=2 times (2+1+1)

    def test_systems_two_and_three_symmetric(self):
        config = EnsembleConfig(european=False, stats_tgt=NEUTRAL)
        a = tree_from([2, 0], labels=["obj", "root"])
        b = tree_from([0, 1], labels=["root", "obj"])
        c = tree_from([2, 0], labels=["nsubj", "root"])
        grid_abc = weight_edges([a, b, c], config)
        grid_acb = weight_edges([a, c, b], config)
        assert grid_abc.weights == grid_acb.weights

    def test_label_tie_prefers_lower_system_then_lexicographic(self):
        config = EnsembleConfig(
            european=True, stats_tgt=NEUTRAL, coefficients=(1.0, 1.0, 1.0)
        )
        s1 = tree_from([2, 0], labels=["zeta", "root"])
        s2 = tree_from([2, 0], labels=["alpha", "root"])
        s3 = tree_from([2, 0], labels=["beta", "root"])
        grid = weight_edges([s1, s2, s3], config)
        weight, label = grid.best[(1, 2)]
        assert weight == 2.0
        assert label == "zeta"  # system 1 wins the tie despite 'alpha' < 'zeta'
        grid = weight_edges([s2, s1, s3], config)
        assert grid.best[(1, 2)][1] == "alpha"

    def test_token_mismatch_rejected(self):
        config = EnsembleConfig(european=True, stats_tgt=NEUTRAL)
        a = tree_from([0, 1])
        b = tree_from([0, 1], forms=["x", "y"])
        with pytest.raises(ValueError, match="disagree on tokens"):
            weight_edges([a, a, b], config)

    def test_exactly_three_required(self):
        config = EnsembleConfig(european=True, stats_tgt=NEUTRAL)
        a = tree_from([0, 1])
        with pytest.raises(ValueError, match="exactly 3"):
            weight_edges([a, a], config)


class TestEisnerDecode:
    def test_single_token(self):
        tree = eisner_decode(grid_from(1, {}))
        assert [t.head for t in tree.tokens] == [0]

    def test_chain_weights(self):
        weights = {(1, 2): 10.0, (3, 2): 10.0, (2, 0): 5.0}
        tree = eisner_decode(grid_from(3, weights))
        assert [t.head for t in tree.tokens] == [2, 0, 2]
        assert decoded_total_weight(grid_from(3, weights), tree) == brute_force_best(3, weights)

    def test_matches_bruteforce_on_random_grids(self):
        rng = random.Random(8)
        for _ in range(200):
            n = rng.randint(1, 5)
            weights = {}
            for m in range(1, n + 1):
                for h in range(0, n + 1):
                    if h != m and rng.random() < 0.75:
                        weights[(m, h)] = float(rng.randint(0, 9))
            grid = grid_from(n, weights)
            tree = eisner_decode(grid)
            assert count_nonprojective_arcs(tree) == 0
            assert spans_contiguous(tree)
            assert sum(1 for t in tree.tokens if t.head == 0) == 1
            assert decoded_total_weight(grid, tree) == brute_force_best(n, weights)

    def test_zero_grid_tie_breaking(self):
        # All weights zero: shortest attachments win, heads lean left.
        tree = eisner_decode(grid_from(3, {}))
        assert [t.head for t in tree.tokens] == [0, 1, 2]

    def test_unproposed_edges_complete_the_tree(self):
        # Only one proposed edge, and it cannot form a full tree alone.
        weights = {(3, 1): 7.0}
        tree = eisner_decode(grid_from(3, weights))
        heads = [t.head for t in tree.tokens]
        assert heads[2] == 1
        assert sum(1 for h in heads if h == 0) == 1


class TestCombine:
    def test_unanimous_inputs_returned_exactly(self):
        config = EnsembleConfig(european=False, stats_tgt=NEUTRAL)
        tree = tree_from([2, 0, 2], labels=["nsubj", "root", "obj"])
        assert ensemble_combine([tree, tree, tree], config) == tree

    def test_two_reorderers_outvote_baseline_for_non_european(self):
        config = EnsembleConfig(european=False, stats_tgt=NEUTRAL)
        base = tree_from([3, 3, 0], labels=["a", "b", "root"])
        reord = tree_from([2, 3, 0], labels=["a", "b", "root"])
        out = ensemble_combine([base, reord, reord], config)
        assert [t.head for t in out.tokens] == [2, 3, 0]

    def test_direction_factor_can_rescue_baseline(self):
        # European: c = (2,1,1); the lone baseline edge agrees with the
        # dominant direction (z=3 -> 6), the rival pair opposes it (z=1 -> 2).
        stats = DirectionStats(counts={"obj": (4, 0)})
        config = EnsembleConfig(european=True, stats_tgt=stats)
        base = tree_from([2, 0], labels=["obj", "root"])
        rival = tree_from([0, 1], labels=["root", "obj"])
        out = ensemble_combine([base, rival, rival], config)
        assert [t.head for t in out.tokens] == [2, 0]

    def test_labels_ride_on_winning_edges(self):
        config = EnsembleConfig(european=False, stats_tgt=NEUTRAL)
        a = tree_from([2, 0], labels=["nsubj", "root"])
        b = tree_from([2, 0], labels=["obj", "root"])
        out = ensemble_combine([a, b, b], config)
        assert out.tokens[0].deprel == "obj"
