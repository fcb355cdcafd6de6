"""End-to-end pipeline on the bundled toy corpus.

Projects the parallel data, learns direction statistics, reorders the source
treebank both ways, code-switches it, and combines three simulated parser
outputs on a held-out target test set.  Returns the metrics so callers can
check the deltas.
"""

from __future__ import annotations

import os
import sys

from . import toydata
from .align_lex import build_lexicon, code_switch, intersect, soft_pos_filter
from .direction import DirectionStats, direction_proportions
from .ensemble import EnsembleConfig, ensemble_combine
from .eval_report import pos_trigram_cosine, uas_las
from .projection import dense_filter, project_tree
from .reorder_data import prepare_training_data, save_instances, save_sentences
from .reorder_model import Hyperparams, classify_reorder, save_model, train
from .reorder_rule import reorder_corpus
from .treebank import emit_conllu

# Sized for the bundled corpus: small tensors, small batches so each epoch
# takes several optimizer steps, and a faster learning rate than the
# full-scale default.
DEMO_HYPERPARAMS = Hyperparams(
    word_dim=24,
    pos_dim=12,
    lstm_dim=32,
    rel_dim=12,
    lang_dim=8,
    hidden_dim=24,
    layers=2,
    minibatch_tokens=64,
    heldout_fraction=0.05,
    max_epochs=30,
    patience=6,
    learning_rate=0.01,
)


def run_demo(
    workdir: str,
    seed: int = 1,
    n_pairs: int = 220,
    n_treebank: int = 150,
    n_test: int = 60,
    log=sys.stderr,
) -> dict:
    """Run the pipeline, write intermediate files to ``workdir``, return metrics."""
    os.makedirs(workdir, exist_ok=True)

    def emit(name: str, trees):
        path = os.path.join(workdir, name)
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(emit_conllu(trees))
        return path

    def say(message: str):
        if log:
            print(message, file=log)

    parallel = toydata.make_parallel(n_pairs, seed=seed)
    src_bank = toydata.make_treebank(n_treebank, seed=seed + 1, language=toydata.SRC_LANG)
    tgt_test = toydata.make_treebank(n_test, seed=seed + 2, language=toydata.TGT_LANG, id_prefix="test")
    emit("parallel_src.conllu", parallel.src_trees)
    emit("parallel_tgt.conllu", parallel.tgt_tagged)
    emit("treebank_src.conllu", src_bank)
    emit("test_gold.conllu", tgt_test)

    # Alignment intersection plus soft POS filtering.
    intersected = []
    for src, tgt, fwd, rev in zip(
        parallel.src_trees, parallel.tgt_tagged, parallel.forward, parallel.reverse
    ):
        links = intersect(fwd, rev)
        links = soft_pos_filter(links, src.upos_tags(), tgt.upos_tags())
        intersected.append(links)

    # Projection and the dense filter.
    projected = [
        project_tree(src, tgt.tokens, links, language=toydata.TGT_LANG)
        for src, tgt, links in zip(parallel.src_trees, parallel.tgt_tagged, intersected)
    ]
    dense = dense_filter(projected)
    emit("projected_dense.conllu", dense)
    say(f"dense projected trees kept: {len(dense)}/{len(projected)}")

    # Direction statistics on both sides.
    stats_tgt = direction_proportions(dense)
    stats_src = direction_proportions(src_bank)
    stats_tgt.save_tsv(os.path.join(workdir, "stats_tgt.tsv"))
    stats_src.save_tsv(os.path.join(workdir, "stats_src.tsv"))

    # Model 1: dominant-direction reordering.
    rule_bank = reorder_corpus(src_bank, stats_src, stats_tgt)
    emit("treebank_rule.conllu", rule_bank)

    # Model 2: classifier reordering.
    instances, kept_sentences = prepare_training_data(parallel.src_trees, intersected)
    save_instances(instances, os.path.join(workdir, "instances.tsv"))
    save_sentences(kept_sentences, os.path.join(workdir, "instance_sentences.conllu"))
    say(f"reordering instances: {len(instances)} from {len(kept_sentences)} sentences")
    result = train(
        instances,
        kept_sentences,
        hp=DEMO_HYPERPARAMS,
        seed=seed,
        log_path=os.path.join(workdir, "training_log.tsv"),
    )
    save_model(result.params, os.path.join(workdir, "reorder.model"))
    clf_bank = [classify_reorder(tree, result.params) for tree in src_bank]
    emit("treebank_clf.conllu", clf_bank)

    # Code-switching on top of the rule-reordered treebank.
    lexicon = build_lexicon(zip(parallel.src_trees, [t.forms() for t in parallel.tgt_tagged], intersected))
    lexicon.save_tsv(os.path.join(workdir, "lexicon.tsv"))
    switched = [code_switch(tree, lexicon) for tree in rule_bank]
    emit("treebank_rule_codeswitched.conllu", switched)
    say("code-switch sample: " + " ".join(switched[0].forms()))

    # Word-order similarity against the target gold trees.
    cosine_base = pos_trigram_cosine(src_bank, tgt_test)
    cosine_rule = pos_trigram_cosine(rule_bank, tgt_test)
    cosine_clf = pos_trigram_cosine(clf_bank, tgt_test)
    say(
        "pos-trigram cosine vs target gold: "
        f"original {cosine_base:.4f}  rule {cosine_rule:.4f}  classifier {cosine_clf:.4f}"
    )

    # Three simulated parser outputs on the test set, then the ensemble.
    sys_base = toydata.corrupt_trees(tgt_test, 0.25, seed=seed + 10)
    sys_rule = toydata.corrupt_trees(tgt_test, 0.16, seed=seed + 11)
    sys_clf = toydata.corrupt_trees(tgt_test, 0.19, seed=seed + 12)
    emit("system_base.conllu", sys_base)
    emit("system_rule.conllu", sys_rule)
    emit("system_clf.conllu", sys_clf)
    config = EnsembleConfig(european=False, stats_tgt=stats_tgt)
    combined = [
        ensemble_combine((a, b, c), config)
        for a, b, c in zip(sys_base, sys_rule, sys_clf)
    ]
    emit("system_ensemble.conllu", combined)

    uas_inputs = [uas_las(tgt_test, system)[0] for system in (sys_base, sys_rule, sys_clf)]
    uas_ensemble = uas_las(tgt_test, combined)[0]
    say(
        "toy test UAS: "
        f"baseline {uas_inputs[0]:.4f}  rule {uas_inputs[1]:.4f}  "
        f"classifier {uas_inputs[2]:.4f}  ensemble {uas_ensemble:.4f}"
    )

    metrics = {
        "dense_kept": len(dense),
        "projected_total": len(projected),
        "instances": len(instances),
        "cosine_base": cosine_base,
        "cosine_rule": cosine_rule,
        "cosine_clf": cosine_clf,
        "uas_inputs": uas_inputs,
        "uas_ensemble": uas_ensemble,
    }
    with open(os.path.join(workdir, "metrics.tsv"), "w", encoding="utf-8") as handle:
        handle.write(f"cosine_base\t{cosine_base:.6f}\n")
        handle.write(f"cosine_rule\t{cosine_rule:.6f}\n")
        handle.write(f"cosine_clf\t{cosine_clf:.6f}\n")
        for name, value in zip(("uas_base", "uas_rule", "uas_clf"), uas_inputs):
            handle.write(f"{name}\t{value:.6f}\n")
        handle.write(f"uas_ensemble\t{uas_ensemble:.6f}\n")
    return metrics
