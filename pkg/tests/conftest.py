import pathlib
import random

import pytest

from treeshift.treebank import DepTree, Token, parse_conllu

DATA = pathlib.Path(__file__).parent / "data"

LABELS = ["nsubj", "obj", "amod", "nmod", "nmod:poss", "det", "case", "aux", "advmod", "conj", "punct"]
UPOS = ["NOUN", "VERB", "ADJ", "DET", "ADP", "ADV", "PRON", "PUNCT"]


def random_full_tree(rng: random.Random, n: int, sentence_id: str = "t", language: str = "xx") -> DepTree:
    """Uniform-ish random full tree: each node attaches to a random earlier pick."""
    order = list(range(1, n + 1))
    rng.shuffle(order)
    heads = {order[0]: 0}
    for pos, node in enumerate(order[1:], start=1):
        heads[node] = rng.choice(order[:pos])
    tokens = [
        Token(
            index=i,
            form=f"w{i}",
            lemma=f"w{i}",
            upos=rng.choice(UPOS),
            head=heads[i],
            deprel="root" if heads[i] == 0 else rng.choice(LABELS),
        )
        for i in range(1, n + 1)
    ]
    return DepTree(sentence_id=sentence_id, language=language, tokens=tuple(tokens))


def crossing_pairs(tree: DepTree) -> set[tuple[int, int]]:
    """Independent oracle: indices of non-root arcs that strictly interleave."""
    arcs = [(min(t.index, t.head), max(t.index, t.head)) for t in tree.tokens if t.head]
    bad = set()
    for i in range(len(arcs)):
        for j in range(i + 1, len(arcs)):
            (a, b), (c, d) = arcs[i], arcs[j]
            if a < c < b < d or c < a < d < b:
                bad.add(arcs[i])
                bad.add(arcs[j])
    return bad


def spans_contiguous(tree: DepTree) -> bool:
    """Independent oracle: every subtree occupies a contiguous token span."""
    children: dict[int, list[int]] = {}
    for tok in tree.tokens:
        children.setdefault(tok.head, []).append(tok.index)

    def descend(node: int) -> set[int]:
        out = {node}
        for child in children.get(node, []):
            out |= descend(child)
        return out

    for tok in tree.tokens:
        span = descend(tok.index)
        if max(span) - min(span) + 1 != len(span):
            return False
    return True


@pytest.fixture(scope="session")
def data_dir() -> pathlib.Path:
    return DATA


@pytest.fixture(scope="session")
def fig1a_tree():
    return parse_conllu((DATA / "fig1a.conllu").read_text(), language="en")[0]


@pytest.fixture(scope="session")
def fig1b_tree():
    return parse_conllu((DATA / "fig1b.conllu").read_text(), language="en")[0]


@pytest.fixture(scope="session")
def verse_tree():
    return parse_conllu((DATA / "verse_en.conllu").read_text(), language="en")[0]
