"""morphfit command line: extract constraints, fit vectors, fix baselines,
evaluate, query neighbours, dump rule tables.

Logs and progress go to stderr; machine-readable results go to stdout. Any
option can also come from a config file of `key = value` lines (--config);
explicit flags win. Exit status: 0 ok, 1 module error, 2 missing input file
or usage error.
"""

import argparse
import os
import sys

from . import constraints as cst
from . import evaluation, fixing, report, vectors
from . import rules as rule_tables
from .optimizer import TrainingConfig, fit

_TRUE = {"1", "true", "yes", "on"}
_FALSE = {"0", "false", "no", "off"}


def _parse_bool(text):
    lowered = text.strip().lower()
    if lowered in _TRUE:
        return True
    if lowered in _FALSE:
        return False
    raise ValueError(f"not a boolean: {text!r}")


# every option a config file may set: dest -> converter
_CONFIG_KEYS = {
    "lang": str, "vocab": str, "out_attract": str, "out_repel": str,
    "min_freq": int, "rules": str, "lowercase": _parse_bool,
    "vectors": str, "attract": str, "repel": str, "out": str,
    "epochs": int, "delta_att": float, "delta_rpl": float,
    "lambda_reg": float, "batch_size": int, "attract_batch_size": int,
    "repel_batch_size": int, "lr": float, "seed": int,
    "normalize": _parse_bool, "normalize_out": _parse_bool,
    "cost_log": str, "plot": _parse_bool, "dataset": str,
    "plot_out": str, "word": str, "k": int, "freq": str,
}


def _read_config(path):
    _require_file(path)
    values = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            key, eq, value = line.partition("=")
            if not eq:
                raise ValueError(f"{path}:{lineno}: expected key = value")
            key = key.strip().replace("-", "_")
            if key not in _CONFIG_KEYS:
                raise ValueError(f"{path}:{lineno}: unknown option {key!r}")
            values[key] = value.strip()
    return values


class _Options:
    """Merged view over CLI flags, config file values, and defaults."""

    def __init__(self, args, config):
        self.args = args
        self.config = config

    def get(self, dest, default=None):
        value = getattr(self.args, dest, None)
        if value is not None:
            return value
        if dest in self.config:
            return _CONFIG_KEYS[dest](self.config[dest])
        return default

    def require(self, dest, flag):
        value = self.get(dest)
        if value is None:
            raise ValueError(f"missing required option {flag}")
        return value


def _require_file(path):
    if not os.path.isfile(path):
        raise FileNotFoundError(path)
    return path


def _load_store(opts):
    path = _require_file(opts.require("vectors", "--vectors"))
    return vectors.load(path, normalize=opts.get("normalize", True),
                        lowercase=opts.get("lowercase", False))


def cmd_extract(opts):
    min_freq = opts.get("min_freq", 10)
    if min_freq < 0:
        raise ValueError("--min-freq must be non-negative")
    vocab_path = _require_file(opts.require("vocab", "--vocab"))
    rules_path = opts.get("rules")
    if rules_path:
        ruleset = rule_tables.load_rules(_require_file(rules_path))
    else:
        ruleset = rule_tables.builtin_rules(opts.require("lang", "--lang"))

    raw_vocab = cst.read_vocab(vocab_path)
    words = []
    for word, count in raw_vocab.items():
        if count is not None and count < min_freq:
            continue
        words.append(word.lower() if opts.get("lowercase", False) else word)
    words = list(dict.fromkeys(words))
    if not words:
        raise ValueError("empty vocabulary after cutoff")

    built = cst.build(words, ruleset)
    cst.write_pairs(built.attract, opts.require("out_attract", "--out-attract"))
    cst.write_pairs(built.repel, opts.require("out_repel", "--out-repel"))
    print(f"|W|={len(words)} |A|={len(built.attract)} |R|={len(built.repel)}")
    return 0


def cmd_fit(opts):
    attract_path = _require_file(opts.require("attract", "--attract"))
    repel_path = opts.get("repel")
    if repel_path:
        _require_file(repel_path)
    out_path = opts.require("out", "--out")

    base_batch = opts.get("batch_size")
    config = TrainingConfig(
        delta_att=opts.get("delta_att", 0.6),
        delta_rpl=opts.get("delta_rpl", 0.0),
        lambda_reg=opts.get("lambda_reg", 1e-9),
        epochs=opts.get("epochs", 10),
        attract_batch_size=base_batch or opts.get("attract_batch_size", 50),
        repel_batch_size=base_batch or opts.get("repel_batch_size", 50),
        learning_rate=opts.get("lr", 0.05),
        rng_seed=opts.get("seed", 1),
    )

    store = _load_store(opts)
    pairs = cst.ConstraintSet(
        cst.read_pairs(attract_path),
        cst.read_pairs(repel_path) if repel_path else [])

    def progress(entry):
        print(f"epoch {entry.epoch}/{config.epochs} "
              f"attract={entry.attract:.6g} repel={entry.repel:.6g} "
              f"reg={entry.regularization:.6g} total={entry.total:.6g}",
              file=sys.stderr)

    fitted, log = fit(store, pairs, config,
                      renormalize_output=opts.get("normalize_out", False),
                      on_epoch=progress)
    vectors.save(fitted, out_path)

    cost_log = opts.get("cost_log") or out_path + ".costs.tsv"
    report.write_cost_log(log, cost_log)
    print(f"wrote {out_path} and {cost_log}", file=sys.stderr)
    if opts.get("plot", True):
        figure = os.path.splitext(cost_log)[0] + ".png"
        report.plot_cost_curves(log, figure)
        print(f"wrote {figure}", file=sys.stderr)
    return 0


def cmd_fix(opts):
    attract_path = _require_file(opts.require("attract", "--attract"))
    freq_path = _require_file(opts.require("freq", "--freq"))
    out_path = opts.require("out", "--out")
    store = _load_store(opts)
    fixed = fixing.morph_fix(store, cst.read_pairs(attract_path),
                             fixing.load_frequency_table(freq_path))
    vectors.save(fixed, out_path)
    print(f"wrote {out_path}", file=sys.stderr)
    return 0


def cmd_eval(opts):
    dataset_path = _require_file(opts.require("dataset", "--dataset"))
    store = _load_store(opts)
    dataset = evaluation.load_similarity_dataset(dataset_path)
    rho, covered, total = evaluation.evaluate(store, dataset)
    plot_out = opts.get("plot_out")
    if plot_out:
        gold, predicted = evaluation.covered_scores(store, dataset)
        report.plot_score_scatter(gold, predicted, rho, plot_out)
        print(f"wrote {plot_out}", file=sys.stderr)
    print(f"rho={rho:.6f} covered={covered} total={total}")
    return 0


def cmd_neighbors(opts):
    word = opts.require("word", "--word")
    k = opts.get("k", 10)
    store = _load_store(opts)
    for neighbor, similarity in evaluation.neighbors(store, word, k):
        print(f"{neighbor}\t{similarity:.6f}")
    return 0


def cmd_rules(opts):
    ruleset = rule_tables.builtin_rules(opts.require("lang", "--lang"))
    text = rule_tables.rules_to_text(ruleset)
    out_path = opts.get("out")
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
        print(f"wrote {out_path}", file=sys.stderr)
    else:
        sys.stdout.write(text)
    return 0


def _build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="FILE",
                        help="key = value defaults, overridden by flags")

    parser = argparse.ArgumentParser(
        prog="morphfit",
        description="Morphology-driven attract/repel fine-tuning of word vectors")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("extract", parents=[common],
                       help="derive attract/repel pairs from a vocabulary")
    p.add_argument("--lang", choices=rule_tables.LANGUAGES)
    p.add_argument("--vocab", metavar="FILE",
                   help="one word per line, optional tab-separated count")
    p.add_argument("--out-attract", metavar="FILE")
    p.add_argument("--out-repel", metavar="FILE")
    p.add_argument("--min-freq", type=int,
                   help="drop words with a count below this (default 10)")
    p.add_argument("--rules", metavar="FILE",
                   help="rule table file to use instead of --lang builtins")
    p.add_argument("--lowercase", action="store_true", default=None)
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("fit", parents=[common],
                       help="fine-tune vectors against constraint pairs")
    p.add_argument("--vectors", metavar="FILE")
    p.add_argument("--attract", metavar="FILE")
    p.add_argument("--repel", metavar="FILE")
    p.add_argument("--out", metavar="FILE")
    p.add_argument("--epochs", type=int)
    p.add_argument("--delta-att", type=float)
    p.add_argument("--delta-rpl", type=float)
    p.add_argument("--lambda-reg", type=float)
    p.add_argument("--batch-size", type=int,
                   help="pairs per mini-batch for both constraint kinds")
    p.add_argument("--lr", type=float)
    p.add_argument("--seed", type=int)
    p.add_argument("--cost-log", metavar="FILE",
                   help="per-epoch cost TSV (default: OUT.costs.tsv)")
    p.add_argument("--plot", action=argparse.BooleanOptionalAction,
                   help="render the cost-curve figure (default on)")
    p.add_argument("--normalize", action=argparse.BooleanOptionalAction,
                   help="unit-normalize vectors at load (default on)")
    p.add_argument("--normalize-out", action="store_true", default=None,
                   help="unit-normalize the fitted vectors before saving")
    p.add_argument("--lowercase", action="store_true", default=None)
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("fix", parents=[common],
                       help="collapse attract-connected words onto their most "
                            "frequent member's vector")
    p.add_argument("--vectors", metavar="FILE")
    p.add_argument("--attract", metavar="FILE")
    p.add_argument("--freq", metavar="FILE", help="word<TAB>count lines")
    p.add_argument("--out", metavar="FILE")
    p.add_argument("--normalize", action=argparse.BooleanOptionalAction)
    p.add_argument("--lowercase", action="store_true", default=None)
    p.set_defaults(func=cmd_fix)

    p = sub.add_parser("eval", parents=[common],
                       help="Spearman rho against a gold similarity dataset")
    p.add_argument("--vectors", metavar="FILE")
    p.add_argument("--dataset", metavar="FILE",
                   help="word1<TAB>word2<TAB>score lines")
    p.add_argument("--plot-out", metavar="FILE",
                   help="render a gold-vs-cosine scatter here")
    p.add_argument("--normalize", action=argparse.BooleanOptionalAction)
    p.add_argument("--lowercase", action="store_true", default=None)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("neighbors", parents=[common],
                       help="top-k nearest words by cosine")
    p.add_argument("--vectors", metavar="FILE")
    p.add_argument("--word")
    p.add_argument("-k", type=int)
    p.add_argument("--normalize", action=argparse.BooleanOptionalAction)
    p.add_argument("--lowercase", action="store_true", default=None)
    p.set_defaults(func=cmd_neighbors)

    p = sub.add_parser("rules", parents=[common],
                       help="print a builtin rule table in editable text form")
    p.add_argument("--lang", choices=rule_tables.LANGUAGES)
    p.add_argument("--out", metavar="FILE")
    p.set_defaults(func=cmd_rules)

    return parser


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        config = _read_config(args.config) if args.config else {}
        return args.func(_Options(args, config))
    except FileNotFoundError as exc:
        print(f"error: file not found: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
