import random

import pytest

from treeshift.align_lex import (
    AlignmentError,
    AlignmentSet,
    TranslationLexicon,
    build_lexicon,
    code_switch,
    intersect,
    parse_alignments,
    soft_pos_filter,
)
from treeshift.treebank import DepTree, Token


def simple_tree(forms, language="xx"):
    n = len(forms)
    tokens = [
        Token(index=i, form=forms[i - 1], head=0 if i == 1 else 1, deprel="root" if i == 1 else "dep")
        for i in range(1, n + 1)
    ]
    return DepTree(sentence_id="s", language=language, tokens=tuple(tokens))


class TestParseAlignments:
    def test_empty_line(self):
        (align,) = parse_alignments("", [(3, 3)])
        assert align.links == frozenset()

    def test_zero_based_shift(self):
        (align,) = parse_alignments("0-0 1-2", [(2, 3)])
        assert align.links == {(1, 1), (2, 3)}

    def test_directed_set_may_repeat_source(self):
        (align,) = parse_alignments("0-0 0-1", [(1, 2)])
        assert align.links == {(1, 1), (1, 2)}
        assert not align.is_one_to_one

    def test_bad_token_names_line(self):
        with pytest.raises(AlignmentError, match="line 2"):
            parse_alignments("0-0\n0:1\n", [(1, 1), (2, 2)])

    def test_out_of_range_rejected(self):
        with pytest.raises(AlignmentError, match="line 1"):
            parse_alignments("5-0", [(2, 2)])

    def test_line_count_must_match_pairs(self):
        with pytest.raises(ValueError):
            parse_alignments("0-0\n", [(1, 1), (1, 1), (1, 1)])


class TestIntersect:
    def test_identical_sets(self):
        a = AlignmentSet(2, 2, frozenset({(1, 1), (2, 2)}))
        b = a.transpose()
        assert intersect(a, b).links == a.links

    def test_disjoint_sets(self):
        a = AlignmentSet(2, 2, frozenset({(1, 1)}))
        b = AlignmentSet(2, 2, frozenset({(1, 2)}))  # tgt->src: (1,2) means tgt1-src2
        assert intersect(a, b).links == frozenset()

    def test_partial_overlap(self):
        a = AlignmentSet(3, 2, frozenset({(1, 1), (2, 2), (3, 2)}))
        b = AlignmentSet(2, 3, frozenset({(1, 1), (2, 3)}))  # transposed: {(1,1),(3,2)}
        assert intersect(a, b).links == {(1, 1), (3, 2)}

    def test_size_mismatch(self):
        a = AlignmentSet(3, 2, frozenset())
        b = AlignmentSet(3, 2, frozenset())
        with pytest.raises(ValueError, match="size mismatch"):
            intersect(a, b)

    def test_functional_inputs_give_one_to_one(self):
        rng = random.Random(3)
        for _ in range(100):
            src_len, tgt_len = rng.randint(1, 6), rng.randint(1, 6)
            fwd = frozenset((s, rng.randint(1, tgt_len)) for s in range(1, src_len + 1) if rng.random() < 0.8)
            rev = frozenset((t, rng.randint(1, src_len)) for t in range(1, tgt_len + 1) if rng.random() < 0.8)
            result = intersect(AlignmentSet(src_len, tgt_len, fwd), AlignmentSet(tgt_len, src_len, rev))
            assert result.is_one_to_one
            assert result.links <= fwd
            assert len(result.links) <= min(len(fwd), len(rev))


class TestSoftPosFilter:
    def test_exact_match_kept(self):
        align = AlignmentSet(1, 1, frozenset({(1, 1)}))
        assert soft_pos_filter(align, ["NOUN"], ["NOUN"]).links == {(1, 1)}

    def test_nominal_confusion_set(self):
        align = AlignmentSet(1, 1, frozenset({(1, 1)}))
        assert soft_pos_filter(align, ["PROPN"], ["PRON"]).links == {(1, 1)}

    def test_incompatible_dropped(self):
        align = AlignmentSet(1, 1, frozenset({(1, 1)}))
        assert soft_pos_filter(align, ["NOUN"], ["VERB"]).links == frozenset()

    def test_wildcard_keeps_anything(self):
        align = AlignmentSet(1, 1, frozenset({(1, 1)}))
        assert soft_pos_filter(align, ["X"], ["PUNCT"]).links == {(1, 1)}

    def test_verbal_confusion_set(self):
        align = AlignmentSet(2, 2, frozenset({(1, 1), (2, 2)}))
        kept = soft_pos_filter(align, ["VERB", "AUX"], ["AUX", "NOUN"])
        assert kept.links == {(1, 1)}


class TestLexicon:
    def test_single_observation(self):
        lex = build_lexicon([(["dog"], ["hund"], AlignmentSet(1, 1, frozenset({(1, 1)})))], language="en")
        assert lex.lookup("en", "dog") == "hund"

    def test_majority_wins(self):
        lex = TranslationLexicon()
        lex.add("en", "dog", "hund", 2)
        lex.add("en", "dog", "katze", 1)
        assert lex.lookup("en", "dog") == "hund"

    def test_tie_breaks_lexicographically(self):
        lex = TranslationLexicon()
        lex.add("en", "dog", "katze", 1)
        lex.add("en", "dog", "hund", 1)
        assert lex.lookup("en", "dog") == "hund"

    def test_counts_are_order_independent(self):
        pairs = [
            (["dog", "cat"], ["hund", "katze"], AlignmentSet(2, 2, frozenset({(1, 1), (2, 2)}))),
            (["dog"], ["hund"], AlignmentSet(1, 1, frozenset({(1, 1)}))),
        ]
        a = build_lexicon(pairs, language="en")
        b = build_lexicon(list(reversed(pairs)), language="en")
        assert a.lookup("en", "dog") == b.lookup("en", "dog")
        assert a.lookup("en", "cat") == b.lookup("en", "cat")

    def test_matching_is_lowercased(self):
        lex = build_lexicon([(["Dog"], ["Hund"], AlignmentSet(1, 1, frozenset({(1, 1)})))], language="en")
        assert lex.lookup("en", "DOG") == "hund"

    def test_merge_equals_concatenation(self):
        a = TranslationLexicon()
        a.add("en", "dog", "hund")
        b = TranslationLexicon()
        b.add("en", "dog", "katze")
        b.add("en", "dog", "katze")
        merged = a.merge(b)
        assert merged.lookup("en", "dog") == "katze"

    def test_tsv_round_trip(self, tmp_path):
        lex = TranslationLexicon()
        lex.add("en", "dog", "hund", 3)
        lex.add("de", "katze", "cat", 1)
        path = tmp_path / "lex.tsv"
        lex.save_tsv(str(path))
        again = TranslationLexicon.load_tsv(str(path))
        assert again.lookup("en", "dog") == "hund"
        assert again.lookup("de", "katze") == "cat"


class TestCodeSwitch:
    def test_empty_lexicon_is_identity(self):
        tree = simple_tree(["the", "dog", "runs"], language="en")
        assert code_switch(tree, TranslationLexicon()) == tree

    def test_replacement_preserves_structure(self):
        tree = simple_tree(["the", "dog", "runs"], language="en")
        lex = TranslationLexicon()
        lex.add("en", "dog", "hund")
        switched = code_switch(tree, lex)
        assert switched.forms() == ["the", "hund", "runs"]
        assert [t.head for t in switched.tokens] == [t.head for t in tree.tokens]
        assert [t.deprel for t in switched.tokens] == [t.deprel for t in tree.tokens]
        assert [t.upos for t in switched.tokens] == [t.upos for t in tree.tokens]

    def test_unknown_forms_keep_original(self):
        tree = simple_tree(["aardvark"], language="en")
        lex = TranslationLexicon()
        lex.add("en", "dog", "hund")
        assert code_switch(tree, lex).forms() == ["aardvark"]

    def test_other_language_untouched(self):
        tree = simple_tree(["dog"], language="fr")
        lex = TranslationLexicon()
        lex.add("en", "dog", "hund")
        assert code_switch(tree, lex).forms() == ["dog"]


def test_alignment_set_validates_ranges():
    with pytest.raises(ValueError):
        AlignmentSet(1, 1, frozenset({(2, 1)}))
