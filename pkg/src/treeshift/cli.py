"""Subcommand front-end wiring the pipeline together.

Every subcommand reads/writes the formats the library defines (CoNLL-U,
Pharaoh alignments, TSV stats/instances/lexicons, the binary model file).
``--out -`` sends data to stdout; diagnostics go to stderr.  Option precedence
is flags > config file > defaults, where the config file holds flat
``key = value`` lines named after the long options.
"""

from __future__ import annotations

import argparse
import concurrent.futures
import random
import sys

from . import demo as demo_mod
from .align_lex import (
    TranslationLexicon,
    build_lexicon,
    code_switch,
    intersect,
    load_confusion_sets,
    parse_alignments,
    soft_pos_filter,
    DEFAULT_CONFUSION_SETS,
)
from .direction import DirectionStats, direction_proportions
from .ensemble import EnsembleConfig, ensemble_combine
from .eval_report import head_pos_fscore, pos_trigram_cosine, uas_las
from .projection import dense_filter, project_tree
from .reorder_data import (
    load_instances,
    load_sentences,
    prepare_training_data,
    save_instances,
    save_sentences,
)
from .reorder_model import (
    Hyperparams,
    classify_reorder,
    load_model,
    load_pretrained,
    save_model,
    train,
)
from .reorder_rule import reorder_corpus, reorder_tree
from .treebank import DepTree, emit_conllu, parse_conllu


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as handle:
        return handle.read()


def _write_text(path: str, text: str):
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(text)


def _read_trees(path: str, language: str = "") -> list[DepTree]:
    return parse_conllu(_read_text(path), language=language)


def _bool(text: str) -> bool:
    value = text.strip().lower()
    if value in ("true", "1", "yes", "on"):
        return True
    if value in ("false", "0", "no", "off"):
        return False
    raise argparse.ArgumentTypeError(f"expected true/false, got {text!r}")


def _floats(text: str) -> tuple[float, ...]:
    return tuple(float(part) for part in text.split(","))


def _parallel_map(fn, items: list, jobs: int) -> list:
    if jobs <= 1 or len(items) < 2:
        return [fn(item) for item in items]
    with concurrent.futures.ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items, chunksize=max(1, len(items) // (jobs * 4))))


def _load_config(path: str) -> dict[str, str]:
    values = {}
    with open(path, encoding="utf-8") as handle:
        for line_no, line in enumerate(handle, start=1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{line_no}: expected key=value")
            key, value = line.split("=", 1)
            values[key.strip().replace("-", "_")] = value.strip()
    return values


def _apply_config(subparser: argparse.ArgumentParser, config: dict[str, str]):
    """Feed config values in as defaults so explicit flags still win."""
    typed = {}
    for action in subparser._actions:
        if action.dest in config:
            raw = config[action.dest]
            if isinstance(action, (argparse._StoreTrueAction, argparse._StoreFalseAction)):
                typed[action.dest] = _bool(raw)
            elif action.type is not None:
                typed[action.dest] = action.type(raw)
            else:
                typed[action.dest] = raw
    unknown = set(config) - set(typed)
    if unknown:
        raise ValueError(f"unknown config keys: {', '.join(sorted(unknown))}")
    subparser.set_defaults(**typed)


# ---------------------------------------------------------------------------
# Subcommands


def _intersected_alignments(args, src_trees, tgt_trees):
    sizes_fwd = [(len(s), len(t)) for s, t in zip(src_trees, tgt_trees)]
    forward = parse_alignments(_read_text(args.align), sizes_fwd)
    if args.align_rev:
        sizes_rev = [(t, s) for s, t in sizes_fwd]
        reverse = parse_alignments(_read_text(args.align_rev), sizes_rev)
        aligned = [intersect(f, r) for f, r in zip(forward, reverse)]
    else:
        aligned = forward
    if not args.no_pos_filter:
        sets = load_confusion_sets(args.confusion_sets) if args.confusion_sets else DEFAULT_CONFUSION_SETS
        aligned = [
            soft_pos_filter(a, s.upos_tags(), t.upos_tags(), sets)
            for a, s, t in zip(aligned, src_trees, tgt_trees)
        ]
    return aligned


def _cmd_project(args) -> int:
    src_trees = _read_trees(args.src)
    tgt_trees = _read_trees(args.tgt)
    if len(src_trees) != len(tgt_trees):
        raise ValueError("source and target corpora differ in sentence count")
    aligned = _intersected_alignments(args, src_trees, tgt_trees)
    work = list(zip(src_trees, tgt_trees, aligned))
    projected = _parallel_map(_project_one, [(s, t, a, args.language) for s, t, a in work], args.jobs)
    _write_text(args.out, emit_conllu(projected))
    return 0


def _project_one(item):
    src, tgt, align, language = item
    return project_tree(src, tgt.tokens, align, language=language)


def _cmd_dense_filter(args) -> int:
    trees = _read_trees(args.infile)
    kept = dense_filter(trees, min_ratio=args.min_ratio, min_span=args.min_span)
    print(f"kept {len(kept)}/{len(trees)} dense trees", file=sys.stderr)
    _write_text(args.out, emit_conllu(kept))
    return 0


def _cmd_dirstats(args) -> int:
    trees = _read_trees(args.infile)
    stats = direction_proportions(trees, threshold=args.threshold)
    if args.out == "-":
        import io

        buf = io.StringIO()
        buf.write(f"# threshold\t{stats.threshold}\n")
        for label in sorted(stats.counts):
            right, left = stats.counts[label]
            buf.write(f"{label}\t{right}\t{left}\t{stats.dominant(label)}\n")
        sys.stdout.write(buf.getvalue())
    else:
        stats.save_tsv(args.out)
    return 0


def _cmd_reorder_rule(args) -> int:
    trees = _read_trees(args.infile)
    stats_src = DirectionStats.load_tsv(args.src_stats)
    stats_tgt = DirectionStats.load_tsv(args.tgt_stats)
    if args.jobs > 1:
        out = _parallel_map(_reorder_one, [(t, stats_src, stats_tgt) for t in trees], args.jobs)
    else:
        diagnostics: list[str] = []
        out = reorder_corpus(trees, stats_src, stats_tgt, diagnostics)
        for line in diagnostics:
            print(line, file=sys.stderr)
    _write_text(args.out, emit_conllu(out))
    return 0


def _reorder_one(item):
    tree, stats_src, stats_tgt = item
    if not tree.is_full:
        return tree
    return reorder_tree(tree, stats_src, stats_tgt)


def _cmd_extract_reorder_data(args) -> int:
    src_trees = _read_trees(args.src)
    tgt_trees = _read_trees(args.tgt)
    if len(src_trees) != len(tgt_trees):
        raise ValueError("source and target corpora differ in sentence count")
    aligned = _intersected_alignments(args, src_trees, tgt_trees)
    diagnostics: list[str] = []
    instances, kept = prepare_training_data(src_trees, aligned, diagnostics)
    for line in diagnostics:
        print(line, file=sys.stderr)
    print(f"extracted {len(instances)} instances from {len(kept)} sentences", file=sys.stderr)
    save_instances(instances, args.out_instances)
    save_sentences(kept, args.out_sentences)
    return 0


def _cmd_train_classifier(args) -> int:
    instances = load_instances(args.instances)
    sentences = load_sentences(args.sentences)
    hp = Hyperparams(
        word_dim=args.word_dim,
        pos_dim=args.pos_dim,
        lstm_dim=args.lstm_dim,
        rel_dim=args.rel_dim,
        lang_dim=args.lang_dim,
        hidden_dim=args.hidden_dim,
        layers=args.layers,
        minibatch_tokens=args.minibatch_tokens,
        heldout_fraction=args.heldout_fraction,
        max_epochs=args.max_epochs,
        patience=args.patience,
    )
    pretrained = load_pretrained(args.pretrained, hp.word_dim) if args.pretrained else None
    result = train(
        instances,
        sentences,
        hp=hp,
        seed=args.seed,
        pretrained=pretrained,
        log_path=args.log,
    )
    save_model(result.params, args.model)
    last = result.history[-1]
    best = min(result.history, key=lambda row: row.heldout_nll)
    print(
        f"trained {last.epoch} epochs; best heldout nll {best.heldout_nll:.4f} "
        f"acc {best.heldout_acc:.4f}",
        file=sys.stderr,
    )
    return 0


def _cmd_reorder_classifier(args) -> int:
    trees = _read_trees(args.infile)
    params = load_model(args.model)
    out = []
    for tree in trees:
        if tree.is_full:
            out.append(classify_reorder(tree, params))
        else:
            print(f"{tree.sentence_id}: left unordered (partial tree)", file=sys.stderr)
            out.append(tree)
    _write_text(args.out, emit_conllu(out))
    return 0


def _cmd_codeswitch(args) -> int:
    trees = _read_trees(args.infile)
    if args.lexicon:
        lexicon = TranslationLexicon.load_tsv(args.lexicon)
    else:
        if not (args.bitext_src and args.bitext_tgt and args.align):
            raise ValueError("need --lexicon or --bitext-src/--bitext-tgt/--align")
        src_trees = _read_trees(args.bitext_src)
        tgt_trees = _read_trees(args.bitext_tgt)
        aligned = _intersected_alignments(args, src_trees, tgt_trees)
        lexicon = build_lexicon(
            zip(src_trees, [t.forms() for t in tgt_trees], aligned)
        )
    if args.save_lexicon:
        lexicon.save_tsv(args.save_lexicon)
    switched = [code_switch(tree, lexicon) for tree in trees]
    _write_text(args.out, emit_conllu(switched))
    return 0


def _cmd_sample(args) -> int:
    trees = _read_trees(args.infile)
    if len(trees) > args.max_sentences:
        rng = random.Random(args.seed)
        keep = sorted(rng.sample(range(len(trees)), args.max_sentences))
        trees = [trees[i] for i in keep]
    _write_text(args.out, emit_conllu(trees))
    return 0


def _cmd_ensemble(args) -> int:
    base = _read_trees(args.base)
    rule = _read_trees(args.rule)
    clf = _read_trees(args.clf)
    if not (len(base) == len(rule) == len(clf)):
        raise ValueError("the three inputs differ in sentence count")
    stats = DirectionStats.load_tsv(args.stats)
    config = EnsembleConfig(
        european=args.european,
        stats_tgt=stats,
        coefficients=args.coefficients,
        z_agree=args.z_agree,
        z_disagree=args.z_disagree,
        z_neutral=args.z_neutral,
    )
    combined = [ensemble_combine(triple, config) for triple in zip(base, rule, clf)]
    _write_text(args.out, emit_conllu(combined))
    return 0


def _cmd_eval(args) -> int:
    gold = _read_trees(args.gold)
    pred = _read_trees(args.pred)
    uas, las = uas_las(gold, pred, punct_by_deprel=args.punct_by_deprel)
    lines = [f"UAS\t{uas:.4f}", f"LAS\t{las:.4f}"]
    if args.head_pos:
        for tag in args.head_pos.split(","):
            tag = tag.strip()
            lines.append(f"head-{tag}-f1\t{head_pos_fscore(gold, pred, tag):.4f}")
    if args.trigram_against:
        other = _read_trees(args.trigram_against)
        lines.append(f"pos-trigram-cosine\t{pos_trigram_cosine(pred, other):.4f}")
    _write_text(args.out, "\n".join(lines) + "\n")
    return 0


def _cmd_demo(args) -> int:
    metrics = demo_mod.run_demo(args.workdir, seed=args.seed)
    delta = metrics["cosine_rule"] - metrics["cosine_base"]
    print(f"cosine delta from rule reordering: {delta:+.4f}")
    print(
        "ensemble UAS vs best input: "
        f"{metrics['uas_ensemble']:.4f} vs {max(metrics['uas_inputs']):.4f}"
    )
    return 0


# ---------------------------------------------------------------------------
# Parser construction


def build_parser() -> tuple[argparse.ArgumentParser, dict[str, argparse.ArgumentParser]]:
    parser = argparse.ArgumentParser(
        prog="treeshift",
        description="Make source treebanks resemble a target language before parser training.",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    registry: dict[str, argparse.ArgumentParser] = {}

    def sub(name: str, func, help_text: str) -> argparse.ArgumentParser:
        p = subparsers.add_parser(name, help=help_text)
        p.set_defaults(func=func)
        p.add_argument("--config", help="flat key=value option file")
        registry[name] = p
        return p

    p = sub("project", _cmd_project, "project source parses onto aligned target sentences")
    p.add_argument("--src", required=True, help="parsed source CoNLL-U")
    p.add_argument("--tgt", required=True, help="tokenized+tagged target CoNLL-U")
    p.add_argument("--align", required=True, help="Pharaoh source->target alignments")
    p.add_argument("--align-rev", help="Pharaoh target->source alignments (intersected when given)")
    p.add_argument("--no-pos-filter", action="store_true", help="skip soft POS consistency")
    p.add_argument("--confusion-sets", help="file with one POS confusion set per line")
    p.add_argument("--language", default="", help="language id for the projected trees")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", required=True)

    p = sub("dense-filter", _cmd_dense_filter, "keep densely projected trees")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--min-ratio", type=float, default=0.8)
    p.add_argument("--min-span", type=int, default=5)
    p.add_argument("--out", required=True)

    p = sub("dirstats", _cmd_dirstats, "dependency direction statistics")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--threshold", type=float, default=0.75)
    p.add_argument("--out", required=True)

    p = sub("reorder-rule", _cmd_reorder_rule, "reorder by dominant dependency directions")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--src-stats", required=True)
    p.add_argument("--tgt-stats", required=True)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", required=True)

    p = sub("extract-reorder-data", _cmd_extract_reorder_data, "build classifier training data")
    p.add_argument("--src", required=True)
    p.add_argument("--tgt", required=True)
    p.add_argument("--align", required=True)
    p.add_argument("--align-rev")
    p.add_argument("--no-pos-filter", action="store_true")
    p.add_argument("--confusion-sets")
    p.add_argument("--out-instances", required=True)
    p.add_argument("--out-sentences", required=True)

    p = sub("train-classifier", _cmd_train_classifier, "train the reordering classifier")
    p.add_argument("--instances", required=True)
    p.add_argument("--sentences", required=True)
    p.add_argument("--model", required=True)
    p.add_argument("--pretrained", help="text embeddings: form v1..vN per line")
    p.add_argument("--log", help="training progress TSV")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--word-dim", type=int, default=100)
    p.add_argument("--pos-dim", type=int, default=100)
    p.add_argument("--lstm-dim", type=int, default=400)
    p.add_argument("--rel-dim", type=int, default=50)
    p.add_argument("--lang-dim", type=int, default=50)
    p.add_argument("--hidden-dim", type=int, default=200)
    p.add_argument("--layers", type=int, default=3)
    p.add_argument("--minibatch-tokens", type=int, default=1000)
    p.add_argument("--heldout-fraction", type=float, default=0.01)
    p.add_argument("--max-epochs", type=int, default=20)
    p.add_argument("--patience", type=int, default=5)

    p = sub("reorder-classifier", _cmd_reorder_classifier, "reorder with a trained classifier")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--model", required=True)
    p.add_argument("--out", required=True)

    p = sub("codeswitch", _cmd_codeswitch, "replace forms with frequent aligned translations")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--lexicon", help="existing lexicon TSV")
    p.add_argument("--bitext-src", help="source side of parallel data (CoNLL-U)")
    p.add_argument("--bitext-tgt", help="target side of parallel data (CoNLL-U)")
    p.add_argument("--align")
    p.add_argument("--align-rev")
    p.add_argument("--no-pos-filter", action="store_true")
    p.add_argument("--confusion-sets")
    p.add_argument("--save-lexicon", help="write the built lexicon here")
    p.add_argument("--out", required=True)

    p = sub("sample", _cmd_sample, "cap a treebank at N sentences")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--max-sentences", type=int, default=1000)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--out", required=True)

    p = sub("ensemble", _cmd_ensemble, "combine three parses with weighted projective decoding")
    p.add_argument("--base", required=True, help="baseline system output")
    p.add_argument("--rule", required=True, help="dominant-direction system output")
    p.add_argument("--clf", required=True, help="classifier system output")
    p.add_argument("--stats", required=True, help="target direction stats TSV")
    p.add_argument("--european", type=_bool, required=True)
    p.add_argument("--coefficients", type=_floats, help="override system weights, e.g. 2,1,1")
    p.add_argument("--z-agree", type=float, default=3.0)
    p.add_argument("--z-disagree", type=float, default=1.0)
    p.add_argument("--z-neutral", type=float, default=2.0)
    p.add_argument("--out", required=True)

    p = sub("eval", _cmd_eval, "attachment scores ignoring punctuation")
    p.add_argument("--gold", required=True)
    p.add_argument("--pred", required=True)
    p.add_argument("--punct-by-deprel", action="store_true", help="judge punctuation by deprel")
    p.add_argument("--head-pos", help="comma-separated head POS tags to f-score")
    p.add_argument("--trigram-against", help="corpus for POS-trigram cosine vs --pred")
    p.add_argument("--out", default="-")

    p = sub("demo", _cmd_demo, "full pipeline on the bundled toy corpus")
    p.add_argument("--workdir", default="treeshift-demo")
    p.add_argument("--seed", type=int, default=1)

    return parser, registry


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser, registry = build_parser()

    # Config files become subparser defaults, so real flags keep precedence.
    if argv and argv[0] in registry and "--config" in argv:
        position = argv.index("--config")
        if position + 1 >= len(argv):
            parser.error("--config needs a file")
        _apply_config(registry[argv[0]], _load_config(argv[position + 1]))

    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"treeshift: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
