"""Bundled synthetic corpus: an SVO source language and an SOV target.

The two toy languages share clause structure token for token, so every
sentence pair comes with its true word alignment.  The source is English-like
(articles, prenominal adjectives, prepositions, preverbal auxiliaries); the
target is head-final (no articles, postnominal adjectives, postpositions,
postverbal auxiliaries, genitives before the noun, verb last).

Everything is seeded and deterministic.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .align_lex import AlignmentSet
from .treebank import DepTree, Token

SRC_LANG = "svo"
TGT_LANG = "sov"

NOUNS = [
    ("dog", "kan"),
    ("cat", "neko"),
    ("man", "otoko"),
    ("bone", "hone"),
    ("fish", "sakana"),
    ("house", "ie"),
    ("bird", "tori"),
    ("child", "kodomo"),
]
VERBS = [
    ("sees", "miru"),
    ("eats", "taberu"),
    ("chases", "ou"),
    ("finds", "mitsukeru"),
    ("wants", "hoshigaru"),
]
ADJS = [
    ("big", "ookii"),
    ("small", "chiisai"),
    ("red", "akai"),
    ("old", "furui"),
]
ADVS = [("quickly", "hayaku"), ("quietly", "shizukani")]
AUXS = [("will", "darou"), ("can", "kanau")]
ADPS = [("near", "soba"), ("with", "tomo")]
DETS = ["the", "a"]


@dataclass
class ClauseSpec:
    """Abstract clause shared by both languages."""

    subj_noun: tuple[str, str]
    verb: tuple[str, str]
    obj_noun: tuple[str, str]
    subj_det: str | None
    obj_det: str | None
    subj_adj: tuple[str, str] | None
    obj_adj: tuple[str, str] | None
    adv: tuple[str, str] | None
    aux: tuple[str, str] | None
    pp_noun: tuple[str, str] | None  # attaches to the object noun
    pp_adp: tuple[str, str] | None
    pp_det: str | None


def sample_clause(rng: random.Random) -> ClauseSpec:
    has_pp = rng.random() < 0.35
    return ClauseSpec(
        subj_noun=rng.choice(NOUNS),
        verb=rng.choice(VERBS),
        obj_noun=rng.choice(NOUNS),
        subj_det=rng.choice(DETS) if rng.random() < 0.9 else None,
        obj_det=rng.choice(DETS) if rng.random() < 0.9 else None,
        subj_adj=rng.choice(ADJS) if rng.random() < 0.4 else None,
        obj_adj=rng.choice(ADJS) if rng.random() < 0.4 else None,
        adv=rng.choice(ADVS) if rng.random() < 0.3 else None,
        aux=rng.choice(AUXS) if rng.random() < 0.3 else None,
        pp_noun=rng.choice(NOUNS) if has_pp else None,
        pp_adp=rng.choice(ADPS) if has_pp else None,
        pp_det=rng.choice(DETS) if has_pp and rng.random() < 0.8 else None,
    )


class _Builder:
    def __init__(self):
        self.rows = []  # (slot, form, upos, head_slot, deprel)

    def add(self, slot: str, form: str, upos: str, head_slot: str | None, deprel: str | None):
        self.rows.append((slot, form, upos, head_slot, deprel))

    def tree(self, sentence_id: str, language: str) -> tuple[DepTree, dict[str, int]]:
        index = {slot: pos for pos, (slot, *_rest) in enumerate(self.rows, start=1)}
        tokens = []
        for pos, (slot, form, upos, head_slot, deprel) in enumerate(self.rows, start=1):
            head = 0 if head_slot is None else index[head_slot]
            tokens.append(
                Token(index=pos, form=form, lemma=form, upos=upos, head=head, deprel=deprel or "root")
            )
        return (
            DepTree(sentence_id=sentence_id, language=language, tokens=tuple(tokens)),
            index,
        )


def source_tree(spec: ClauseSpec, sentence_id: str) -> tuple[DepTree, dict[str, int]]:
    """SVO order: (det) (adj) subj (aux) (adv) verb (det) (adj) obj (prep (det) pp) ."""
    b = _Builder()
    if spec.subj_det:
        b.add("subj_det", spec.subj_det, "DET", "subj", "det")
    if spec.subj_adj:
        b.add("subj_adj", spec.subj_adj[0], "ADJ", "subj", "amod")
    b.add("subj", spec.subj_noun[0], "NOUN", "verb", "nsubj")
    if spec.aux:
        b.add("aux", spec.aux[0], "AUX", "verb", "aux")
    if spec.adv:
        b.add("adv", spec.adv[0], "ADV", "verb", "advmod")
    b.add("verb", spec.verb[0], "VERB", None, None)
    if spec.obj_det:
        b.add("obj_det", spec.obj_det, "DET", "obj", "det")
    if spec.obj_adj:
        b.add("obj_adj", spec.obj_adj[0], "ADJ", "obj", "amod")
    b.add("obj", spec.obj_noun[0], "NOUN", "verb", "obj")
    if spec.pp_noun:
        b.add("pp_adp", spec.pp_adp[0], "ADP", "pp", "case")
        if spec.pp_det:
            b.add("pp_det", spec.pp_det, "DET", "pp", "det")
        b.add("pp", spec.pp_noun[0], "NOUN", "obj", "nmod")
    b.add("punct", ".", "PUNCT", "verb", "punct")
    return b.tree(sentence_id, SRC_LANG)


def target_tree(spec: ClauseSpec, sentence_id: str) -> tuple[DepTree, dict[str, int]]:
    """SOV order: subj (adj) (pp post) obj (adj) (adv) verb (aux) ."""
    b = _Builder()
    b.add("subj", spec.subj_noun[1], "NOUN", "verb", "nsubj")
    if spec.subj_adj:
        b.add("subj_adj", spec.subj_adj[1], "ADJ", "subj", "amod")
    if spec.pp_noun:
        b.add("pp", spec.pp_noun[1], "NOUN", "obj", "nmod")
        b.add("pp_adp", spec.pp_adp[1], "ADP", "pp", "case")
    b.add("obj", spec.obj_noun[1], "NOUN", "verb", "obj")
    if spec.obj_adj:
        b.add("obj_adj", spec.obj_adj[1], "ADJ", "obj", "amod")
    if spec.adv:
        b.add("adv", spec.adv[1], "ADV", "verb", "advmod")
    b.add("verb", spec.verb[1], "VERB", None, None)
    if spec.aux:
        b.add("aux", spec.aux[1], "AUX", "verb", "aux")
    b.add("punct", ".", "PUNCT", "verb", "punct")
    return b.tree(sentence_id, TGT_LANG)


def true_alignment(src_index: dict[str, int], tgt_index: dict[str, int]) -> set[tuple[int, int]]:
    """Content-word links; articles have no target counterpart."""
    links = set()
    for slot, s in src_index.items():
        if slot.endswith("_det"):
            continue
        t = tgt_index.get(slot)
        if t is not None:
            links.add((s, t))
    return links


@dataclass
class ParallelCorpus:
    src_trees: list[DepTree]       # parsed source side
    tgt_tagged: list[DepTree]      # target side, tokenized and tagged, no heads
    forward: list[AlignmentSet]    # source -> target
    reverse: list[AlignmentSet]    # target -> source
    tgt_gold: list[DepTree]        # target side with gold heads (held back)


def make_parallel(n_pairs: int, seed: int = 1) -> ParallelCorpus:
    """Aligned sentence pairs with slightly noisy two-directional alignments."""
    rng = random.Random(seed)
    src_trees = []
    tgt_tagged = []
    tgt_gold = []
    forward = []
    reverse = []
    for i in range(1, n_pairs + 1):
        spec = sample_clause(rng)
        src, src_index = source_tree(spec, f"pair{i}")
        tgt, tgt_index = target_tree(spec, f"pair{i}")
        links = true_alignment(src_index, tgt_index)

        fwd = set(links)
        rev = set(links)
        if len(links) > 3 and rng.random() < 0.15:  # asymmetric aligner noise
            fwd.discard(rng.choice(sorted(fwd)))
        if len(links) > 3 and rng.random() < 0.15:
            rev.discard(rng.choice(sorted(rev)))
        if spec.subj_det and rng.random() < 0.08:  # shared garbage link, POS-inconsistent
            bad = (src_index["subj_det"], tgt_index["verb"])
            fwd.add(bad)
            rev.add(bad)

        src_trees.append(src)
        tgt_tagged.append(
            tgt.with_tokens([  # strip gold heads: tokenized + tagged input only
                Token(index=t.index, form=t.form, lemma=t.lemma, upos=t.upos)
                for t in tgt.tokens
            ])
        )
        tgt_gold.append(tgt)
        forward.append(AlignmentSet(len(src), len(tgt), frozenset(fwd)))
        reverse.append(AlignmentSet(len(tgt), len(src), frozenset((t, s) for s, t in rev)))
    return ParallelCorpus(src_trees, tgt_tagged, forward, reverse, tgt_gold)


def make_treebank(n: int, seed: int, language: str = SRC_LANG, id_prefix: str = "sent") -> list[DepTree]:
    """Gold treebank in one of the two toy languages."""
    rng = random.Random(seed)
    trees = []
    for i in range(1, n + 1):
        spec = sample_clause(rng)
        if language == SRC_LANG:
            tree, _ = source_tree(spec, f"{id_prefix}{i}")
        else:
            tree, _ = target_tree(spec, f"{id_prefix}{i}")
        trees.append(tree)
    return trees


LABEL_POOL = ["nsubj", "obj", "amod", "nmod", "det", "case", "aux", "advmod", "punct"]


def corrupt_trees(trees: list[DepTree], error_rate: float, seed: int) -> list[DepTree]:
    """Simulated parser output: rewire some heads (cycle-free, root kept) and
    scramble some labels."""
    rng = random.Random(seed)
    out = []
    for tree in trees:
        n = len(tree)
        heads = {t.index: t.head for t in tree.tokens}

        def descendants(node: int) -> set[int]:
            down = {node}
            changed = True
            while changed:
                changed = False
                for idx, head in heads.items():
                    if head in down and idx not in down:
                        down.add(idx)
                        changed = True
            return down

        new_tokens = []
        for tok in tree.tokens:
            head, deprel = tok.head, tok.deprel
            if tok.head != 0 and n > 2 and rng.random() < error_rate:
                blocked = descendants(tok.index) | {0, tok.index}
                options = [c for c in range(1, n + 1) if c not in blocked]
                if options:
                    head = rng.choice(options)
                    heads[tok.index] = head
                    if rng.random() < 0.5:
                        deprel = rng.choice(LABEL_POOL)
            new_tokens.append(
                Token(
                    index=tok.index,
                    form=tok.form,
                    lemma=tok.lemma,
                    upos=tok.upos,
                    head=head,
                    deprel=deprel,
                )
            )
        out.append(tree.with_tokens(new_tokens))
    return out
