"""Command-line interface.

Subcommands: calibrate, bench, report, meta {select,train,predict,report},
seed, features. Settings resolve as defaults < --config file < FAIRSEED_*
environment variables < explicit flags. Exit codes: 0 success, 1 usage
error, 2 data error, 3 partial failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

from .graph import EdgeListParseError
from .harness import (
    DataError,
    RunConfig,
    cmd_bench,
    cmd_calibrate,
    cmd_features,
    cmd_meta_predict,
    cmd_meta_report,
    cmd_meta_select,
    cmd_meta_train,
    cmd_report,
    cmd_seed,
    load_run_config,
)
from .seeders import AlgorithmId

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_PARTIAL = 3


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on usage errors; the conventions here use 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def _add_common_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="JSON config file")
    parser.add_argument("--manifest", help="corpus manifest (JSON array of name/path/domain)")
    parser.add_argument("--regime", action="append", dest="regimes",
                        choices=("low", "medium", "high"),
                        help="spreadability regime (repeatable)")
    parser.add_argument("--rounds", type=int,
                        help="Monte Carlo rounds for this command's estimator")
    parser.add_argument("--runs", type=int, help="evaluation runs per cell")
    parser.add_argument("--kmax", type=int, dest="k_max", help="seed budget")
    parser.add_argument("--seed", type=int, help="global rng seed")
    parser.add_argument("--out", help="output directory")
    parser.add_argument("--workers", type=int, help="parallel worker processes")
    parser.add_argument("--single-core-timing", action="store_const", const=True,
                        dest="single_core_timing", help="pin timing runs to one core")
    parser.add_argument("--no-lcc", action="store_const", const=False,
                        dest="extract_lcc",
                        help="keep whole graphs instead of the largest component")
    parser.add_argument("--large-network-preset", action="store_const", const=True,
                        dest="large_network_preset",
                        help="R=10000 evaluation, 3 runs, R=1000 calibration")


def build_parser() -> _Parser:
    parser = _Parser(prog="fairseed", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    for name, doc in (
        ("calibrate", "calibrate alpha per network and regime"),
        ("bench", "evaluate all algorithms; emits results/aggregate/timing CSVs"),
        ("report", "category matrix and best-per-network tables"),
    ):
        p = sub.add_parser(name, help=doc)
        _add_common_flags(p)

    meta = sub.add_parser("meta", help="portfolio selection and the meta-learner")
    meta_sub = meta.add_subparsers(dest="meta_command", required=True)
    for name, doc in (
        ("select", "greedy ensemble selection from bench aggregates"),
        ("train", "train the best-algorithm classifier"),
        ("report", "performance/speedup report versus Myopic"),
    ):
        p = meta_sub.add_parser(name, help=doc)
        _add_common_flags(p)
    p = meta_sub.add_parser("predict", help="predict the best algorithm for one network")
    _add_common_flags(p)
    p.add_argument("model", help="trained model file")
    p.add_argument("network", help="edge-list file")
    p.add_argument("domain", nargs="?", default="unknown", help="network domain label")

    p = sub.add_parser("seed", help="run one seeding algorithm on one network")
    _add_common_flags(p)
    p.add_argument("network", help="edge-list file")
    p.add_argument("algorithm", help="algorithm name")
    p.add_argument("--alpha", type=float, default=0.5, help="transmission probability")
    p.add_argument("--init", type=int, help="pin the initial seed node id")

    p = sub.add_parser("features", help="structural feature profiles")
    _add_common_flags(p)
    p.add_argument("network", nargs="?", help="single edge-list file (JSON to stdout)")

    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    overrides = {
        "manifest": args.manifest,
        "regimes": tuple(args.regimes) if args.regimes else None,
        "runs": args.runs,
        "k_max": args.k_max,
        "seed": args.seed,
        "out": args.out,
        "workers": args.workers,
        "single_core_timing": args.single_core_timing,
        "extract_lcc": args.extract_lcc,
        "large_network_preset": args.large_network_preset,
    }
    if args.rounds is not None:
        if args.command == "calibrate":
            overrides["calibration_rounds"] = args.rounds
        else:
            overrides["evaluation_rounds"] = args.rounds
    return load_run_config(args.config, overrides)


def main(argv=None) -> int:
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)

    try:
        # `seed --kmax 0` is legal (empty selection); keep it away from the
        # RunConfig count validation, which requires k_max >= 1.
        k = 10
        if args.command == "seed" and args.k_max is not None:
            if args.k_max < 0:
                parser.error("--kmax must be >= 0")
            k = args.k_max
            args.k_max = None
        cfg = _config_from_args(args)
        if args.command == "calibrate":
            return cmd_calibrate(cfg)
        if args.command == "bench":
            return cmd_bench(cfg)
        if args.command == "report":
            return cmd_report(cfg)
        if args.command == "meta":
            if args.meta_command == "select":
                return cmd_meta_select(cfg)
            if args.meta_command == "train":
                return cmd_meta_train(cfg)
            if args.meta_command == "predict":
                return cmd_meta_predict(cfg, args.model, args.network, args.domain)
            return cmd_meta_report(cfg)
        if args.command == "seed":
            try:
                algorithm = AlgorithmId(args.algorithm)
            except ValueError:
                names = ", ".join(a.value for a in AlgorithmId)
                parser.error(f"unknown algorithm {args.algorithm!r}; valid names: {names}")
            payload = cmd_seed(
                args.network, algorithm, args.alpha, k,
                rng_seed=cfg.seed, init=args.init,
                rounds=cfg.seeder_rounds, extract_lcc=cfg.extract_lcc,
                damping=cfg.ppr_damping,
            )
            print(json.dumps(payload))
            return EXIT_OK
        if args.command == "features":
            return cmd_features(cfg, args.network)
        parser.error(f"unknown command {args.command!r}")
    except DataError as exc:
        print(f"fairseed: data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except (EdgeListParseError, FileNotFoundError, ValueError) as exc:
        print(f"fairseed: data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
