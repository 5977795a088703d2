"""Command-line experiment runner.

    hyperlap run --dataset data/zoo.data --kind zoo --format csv
    hyperlap mu-sweep --dataset data/zoo.data --p 2,3.5
    hyperlap convert-newsgroups 20news_w100.mat data/news.txt
    hyperlap export --dataset data/zoo.data --kind zoo --out zoo.hg
"""

import argparse
import logging
import sys

from . import data, experiment
from .exceptions import HyperlapError


def _float_list(text):
    try:
        return tuple(float(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _add_dataset_args(parser):
    parser.add_argument("--dataset", required=True, help="input file")
    parser.add_argument("--kind", choices=("zoo", "newsgroups", "native"), default="zoo")
    parser.add_argument("--include-zero-edges", action="store_true",
                        help="zoo: also add an edge per attribute for animals lacking it")
    parser.add_argument("--subset-size", type=int, default=200,
                        help="newsgroups: number of postings to sample (default 200)")
    parser.add_argument("--seed", type=int, default=0)


def _add_experiment_args(parser):
    _add_dataset_args(parser)
    parser.add_argument("--p", type=_float_list, default=experiment.DEFAULT_P_VALUES,
                        help="comma-separated p values (default 2,3,3.1,...,4)")
    parser.add_argument("--mu", type=float, default=1.0)
    parser.add_argument("--labeled-fraction", type=float, default=0.2)
    parser.add_argument("--trials", type=int, default=20)
    parser.add_argument("--tol", type=float, default=1e-6)
    parser.add_argument("--max-iter", type=int, default=1000)
    parser.add_argument("--epsilon", type=float, default=1e-10)
    parser.add_argument("--relaxation", type=float, default=0.5,
                        help="weight of each new sweep, in (0, 1]; 1 = plain fixed-point sweep")
    parser.add_argument("--format", choices=("text", "csv"), default="text")
    parser.add_argument("--out", default=None, help="output path (default: stdout)")


def _spec(args):
    return experiment.ExperimentSpec(
        dataset=args.dataset, kind=args.kind, p_values=args.p, mu=args.mu,
        labeled_fraction=args.labeled_fraction, trials=args.trials, seed=args.seed,
        tol=args.tol, max_iter=args.max_iter, epsilon=args.epsilon,
        relaxation=args.relaxation, include_zero_edges=args.include_zero_edges,
        subset_size=args.subset_size,
    )


def _cmd_run(args):
    rows = experiment.run_experiment(_spec(args))
    experiment.emit(rows, args.format, args.out)


def _cmd_mu_sweep(args):
    mus = args.mu_values or experiment.DEFAULT_MU_GRID
    rows = experiment.run_mu_sweep(_spec(args), mus)
    experiment.emit(rows, args.format, args.out)


def _cmd_convert(args):
    for path in data.convert_newsgroups_mat(args.mat, args.out):
        print(path)


def _cmd_export(args):
    ds = data.load_dataset(args.dataset, args.kind, include_zero_edges=args.include_zero_edges,
                           subset_size=args.subset_size, seed=args.seed)
    data.save_hypergraph(ds, args.out)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="hyperlap",
        description="Hypergraph p-Laplacian semi-supervised classification experiments.",
    )
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="accuracy table over p values")
    _add_experiment_args(run)
    run.set_defaults(func=_cmd_run)

    sweep = sub.add_parser("mu-sweep", help="accuracy over a grid of mu values")
    _add_experiment_args(sweep)
    sweep.add_argument("--mu-values", type=_float_list, default=None,
                       help="comma-separated mu grid (default 9 log-spaced values in [0.01, 100])")
    sweep.set_defaults(func=_cmd_mu_sweep)

    conv = sub.add_parser("convert-newsgroups",
                          help="turn 20news_w100.mat into the text matrix + .labels/.words")
    conv.add_argument("mat")
    conv.add_argument("out")
    conv.set_defaults(func=_cmd_convert)

    export = sub.add_parser("export", help="write a dataset in the native hypergraph format")
    _add_dataset_args(export)
    export.add_argument("--out", required=True)
    export.set_defaults(func=_cmd_export)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        args.func(args)
    except (HyperlapError, ValueError, OSError) as exc:
        print(f"hyperlap: error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
