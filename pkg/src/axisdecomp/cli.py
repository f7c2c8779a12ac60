"""Command line entry points: run an analysis, serve an exported bundle."""

from __future__ import annotations

import argparse
import sys

from .dataset import DatasetError
from .graph_embedding import SolverError
from .pipeline import AnalysisConfig, ConfigError, export_bundle, run_analysis, serve_bundle

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_DATA = 2
EXIT_NUMERIC = 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="axisdecomp",
        description="Decompose diverse linear projections of tabular data "
        "into evidence-ranked axis-aligned scatterplots.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    an = sub.add_parser("analyze", help="run the full analysis and export a bundle")
    an.add_argument("--input", required=True, help="input CSV path")
    an.add_argument("--label", default=None, help="name of the class label column")
    an.add_argument("--objective", default="lpp", choices=["pca", "lpp", "lde"])
    an.add_argument("--projections", type=int, default=4, metavar="P")
    an.add_argument("--alpha", type=float, default=1.0)
    an.add_argument("--knn", type=int, default=10)
    an.add_argument("--gamma", default="auto")
    an.add_argument("--k", type=int, default=10, help="secant neighborhood size")
    an.add_argument("--lmax", type=int, default=5)
    an.add_argument("--delta", type=float, default=0.9)
    an.add_argument("--lambda", dest="lam", type=float, default=1e-3)
    an.add_argument("--eta0", type=float, default=0.95)
    an.add_argument("--filter", type=float, default=0.05)
    an.add_argument("--bins", type=int, default=20)
    an.add_argument("--output", required=True, help="bundle JSON output path")

    sv = sub.add_parser("serve", help="serve a bundle and the UI over HTTP")
    sv.add_argument("--bundle", required=True)
    sv.add_argument("--port", type=int, default=8080)
    sv.add_argument("--assets", default=None, help="static UI assets directory")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "serve":
        try:
            serve_bundle(args.bundle, args.port, args.assets)
        except OSError as exc:
            print(f"serve: {exc}", file=sys.stderr)
            return EXIT_CONFIG
        return EXIT_OK

    gamma = args.gamma if args.gamma == "auto" else float(args.gamma)
    try:
        cfg = AnalysisConfig(
            input_path=args.input,
            label_column=args.label,
            objective=args.objective,
            projections=args.projections,
            alpha=args.alpha,
            knn=args.knn,
            gamma=gamma,
            k=args.k,
            l_max=args.lmax,
            delta=args.delta,
            lam=args.lam,
            eta0=args.eta0,
            evidence_filter=args.filter,
            bins=args.bins,
            output_path=args.output,
        )
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        bundle = run_analysis(cfg)
    except DatasetError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except SolverError as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    export_bundle(bundle, args.output)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
