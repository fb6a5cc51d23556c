"""Command line entry point for running verification suites.

Exit codes: 0 when every check passes, 1 when any check fails, 2 when the
configuration cannot be loaded or is inconsistent.
"""

from __future__ import annotations

import argparse
import dataclasses
import sys
from typing import Optional, Sequence

from .config import ConfigError, load_config
from .report import emit_report, text_summary
from .suites import SUITE_RUNNERS, run_suites


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="verify",
        description="Run the verification suites described by a JSON config.")
    parser.add_argument("--config", required=True, help="path to the JSON run configuration")
    parser.add_argument("--suite", action="append", default=None, metavar="NAME",
                        choices=sorted(SUITE_RUNNERS),
                        help="restrict to this suite (repeatable)")
    parser.add_argument("--out", default=None, metavar="PATH",
                        help="write the canonical JSON report here (plus a .txt summary)")
    parser.add_argument("--seed", type=int, default=None, metavar="U64",
                        help="override the configured seed")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config)
        if args.seed is not None:
            if not (0 <= args.seed < 2 ** 64):
                raise ConfigError(f"--seed must be an unsigned 64-bit value, got {args.seed}")
            cfg = dataclasses.replace(cfg, mc=dataclasses.replace(cfg.mc, seed=args.seed))
        if args.suite:
            requested = tuple(dict.fromkeys(args.suite))   # dedupe, keep order
            if "equivalence" in requested and cfg.N - 2 * cfg.R < 0:
                raise ConfigError(
                    f"equivalence suite needs N - 2R >= 0, got N={cfg.N}, R={cfg.R}")
            cfg = dataclasses.replace(cfg, suites=requested)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2

    report = run_suites(cfg)
    out_path = args.out if args.out is not None else cfg.output_path
    if out_path is not None:
        emit_report(report, out_path)
    print(text_summary(report))
    return 0 if report.all_passed else 1


if __name__ == "__main__":
    sys.exit(main())
