import random

import pytest

from treeshift.align_lex import AlignmentSet
from treeshift.projection import DensityStats, dense_filter, is_dense, project_tree
from treeshift.treebank import DepTree, Token

from conftest import random_full_tree


def tree_from(heads, labels):
    tokens = [
        Token(index=i, form=f"w{i}", head=heads[i - 1], deprel=labels[i - 1])
        for i in range(1, len(heads) + 1)
    ]
    return DepTree(sentence_id="src", language="en", tokens=tuple(tokens))


def target_tokens(n):
    return [Token(index=i, form=f"t{i}", upos="NOUN") for i in range(1, n + 1)]


def partial_tree(head_flags):
    tokens = []
    for i, has_head in enumerate(head_flags, start=1):
        head = 0 if (has_head and i == 1) else (1 if has_head else None)
        deprel = ("root" if i == 1 else "dep") if has_head else None
        tokens.append(Token(index=i, form=f"w{i}", head=head, deprel=deprel))
    return DepTree(sentence_id="p", language="xx", tokens=tuple(tokens))


class TestProjectTree:
    def test_identity_alignment_copies_structure(self):
        src = tree_from([2, 0, 2], ["nsubj", "root", "obj"])
        align = AlignmentSet(3, 3, frozenset({(1, 1), (2, 2), (3, 3)}))
        out = project_tree(src, target_tokens(3), align)
        assert [(t.head, t.deprel) for t in out.tokens] == [(2, "nsubj"), (0, "root"), (2, "obj")]

    def test_empty_alignment_leaves_all_heads_absent(self):
        src = tree_from([2, 0], ["nsubj", "root"])
        align = AlignmentSet(2, 2, frozenset())
        out = project_tree(src, target_tokens(2), align)
        assert all(t.head is None for t in out.tokens)

    def test_full_reversal(self):
        src = tree_from([2, 0, 2], ["nsubj", "root", "obj"])
        align = AlignmentSet(3, 3, frozenset({(1, 3), (2, 2), (3, 1)}))
        out = project_tree(src, target_tokens(3), align)
        by_index = {t.index: (t.head, t.deprel) for t in out.tokens}
        assert by_index[2] == (0, "root")
        assert by_index[3] == (2, "nsubj")
        assert by_index[1] == (2, "obj")

    def test_unaligned_head_leaves_token_headless(self):
        src = tree_from([2, 0], ["nsubj", "root"])
        align = AlignmentSet(2, 2, frozenset({(1, 1)}))  # the root is unaligned
        out = project_tree(src, target_tokens(2), align)
        assert out.tokens[0].head is None

    def test_non_one_to_one_rejected(self):
        src = tree_from([0], ["root"])
        align = AlignmentSet(1, 2, frozenset({(1, 1), (1, 2)}))
        with pytest.raises(ValueError):
            project_tree(src, target_tokens(2), align)

    def test_never_produces_cycles_or_extra_heads(self):
        rng = random.Random(17)
        for _ in range(300):
            n = rng.randint(1, 8)
            src = random_full_tree(rng, n)
            m = rng.randint(1, 8)
            src_side = list(range(1, n + 1))
            tgt_side = list(range(1, m + 1))
            rng.shuffle(src_side)
            rng.shuffle(tgt_side)
            links = frozenset(
                (s, t) for s, t in zip(src_side, tgt_side) if rng.random() < 0.7
            )
            out = project_tree(src, target_tokens(m), AlignmentSet(n, m, links))
            assigned = sum(1 for t in out.tokens if t.head is not None)
            assert assigned <= len(links)
            # no cycles: walking up from any token terminates
            heads = {t.index: t.head for t in out.tokens}
            for start in heads:
                node, steps = start, 0
                while heads.get(node) not in (None, 0) and steps <= m:
                    node = heads[node]
                    steps += 1
                assert steps <= m


class TestDensity:
    def test_stats(self):
        tree = partial_tree([True, True, False, True, True, True])
        stats = DensityStats.from_tree(tree)
        assert (stats.n, stats.assigned, stats.max_full_span) == (6, 5, 3)

    def test_exactly_eighty_percent_kept(self):
        tree = partial_tree([True] * 8 + [False] * 2)
        assert is_dense(tree)

    def test_span_rule_keeps_sparse_tree(self):
        flags = [False] * 20
        for i in range(2, 7):  # positions 3..7
            flags[i] = True
        tree = partial_tree(flags)
        assert DensityStats.from_tree(tree).ratio < 0.8
        assert is_dense(tree)

    def test_neither_criterion_drops(self):
        flags = [True, True, False, True, True, False, True, True, False, True]
        tree = partial_tree(flags)
        assert DensityStats.from_tree(tree).assigned == 7
        assert not is_dense(tree)

    def test_filter_keeps_order(self):
        sparse = partial_tree([False] * 10)
        dense = partial_tree([True] * 10)
        assert dense_filter([sparse, dense, sparse]) == [dense]

    def test_monotone_in_assignments(self):
        rng = random.Random(23)
        for _ in range(200):
            n = rng.randint(1, 12)
            flags = [rng.random() < 0.5 for _ in range(n)]
            tree = partial_tree(flags)
            if not is_dense(tree):
                continue
            upgraded = list(flags)
            missing = [i for i, f in enumerate(upgraded) if not f]
            if missing:
                upgraded[rng.choice(missing)] = True
            assert is_dense(partial_tree(upgraded))
