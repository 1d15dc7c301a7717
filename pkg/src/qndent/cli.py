"""Command-line entry point: ``qndent <subcommand> [options]``.

Exit codes: 0 success, 2 configuration error, 3 quadrature non-convergence.
"""
from __future__ import annotations

import argparse
import logging
import sys

from .bath import QuadratureError
from .config import ConfigError, load_config, validate_config
from . import harness

EXIT_OK, EXIT_CONFIG, EXIT_NUMERIC = 0, 2, 3


def _parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="INI-style experiment file")
    common.add_argument("--seed", type=int)
    common.add_argument("--out", help="output directory")
    common.add_argument("--regime", choices=["localized", "collective"])
    common.add_argument("--T", type=float, dest="T")
    common.add_argument("--alpha", type=float)
    common.add_argument("--gamma0", type=float)
    common.add_argument("--omega-c", type=float, dest="omega_c")
    common.add_argument("--r-ab", type=float, dest="r_ab", help="separation in time units")
    common.add_argument("--kr", type=float, help="separation as omega_c * r_ab")
    common.add_argument("--origin", type=float)
    common.add_argument("--t", type=float, dest="t", help="evaluation time for pdf/effective/T and alpha scans")
    common.add_argument("--n-samples", type=int, dest="n_samples")
    common.add_argument("--workers", type=int)
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="qndent", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    fig = sub.add_parser("figure", parents=[common], help="write a figure dataset")
    fig.add_argument("name", choices=harness.FIGURES + ("all",))
    sub.add_parser("scan", parents=[common], help="scan quantities along t, T or alpha")
    sub.add_parser("pdf", parents=[common], help="entanglement density at time t")
    rep = sub.add_parser("repeater", parents=[common], help="Bell fidelity and purification")
    rep.add_argument("--rounds", type=int, default=10)
    sub.add_parser("effective", parents=[common], help="Bell spectrum and effective Hamiltonian")
    val = sub.add_parser("validate", help="check a config file")
    val.add_argument("path")
    return p


_OVERRIDES = ("seed", "out", "regime", "T", "alpha", "gamma0", "omega_c", "r_ab", "kr",
              "origin", "t", "n_samples", "workers")


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if getattr(args, "verbose", False) else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if args.command == "validate":
        errors = validate_config(args.path)
        for e in errors:
            print(e, file=sys.stderr)
        if not errors:
            print(f"{args.path}: ok")
        return EXIT_CONFIG if errors else EXIT_OK

    try:
        cfg = load_config(args.config, **{k: getattr(args, k) for k in _OVERRIDES})
        cfg.initial_state()
    except ConfigError as exc:
        for e in exc.errors:
            print(f"config error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    try:
        if args.command == "figure":
            names = harness.FIGURES if args.name == "all" else (args.name,)
            datasets = [ds for n in names for ds in harness.run_figure(n, cfg)]
        elif args.command == "scan":
            datasets = [harness.run_scan(cfg)]
        elif args.command == "pdf":
            datasets = harness.run_pdf(cfg)
        elif args.command == "repeater":
            datasets = harness.run_repeater(cfg, args.rounds)
        else:
            print(harness.run_effective(cfg, cfg.out))
            return EXIT_OK
    except QuadratureError as exc:
        print(f"numerical error: {exc} (estimate {exc.estimate!r}, error {exc.error!r})", file=sys.stderr)
        return EXIT_NUMERIC
    except ValueError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    for ds in datasets:
        print(harness.write_dataset(ds, cfg.out))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
