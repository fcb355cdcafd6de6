"""treeshift: make source treebanks resemble a target language.

Projection of dependencies across word alignments, dominant-direction and
classifier-based treebank reordering, lexicon code-switching, and a weighted
projective ensemble over candidate parses.
"""

from .treebank import DepTree, Token, count_nonprojective_arcs, emit_conllu, parse_conllu

__all__ = [
    "DepTree",
    "Token",
    "parse_conllu",
    "emit_conllu",
    "count_nonprojective_arcs",
]

__version__ = "0.1.0"
