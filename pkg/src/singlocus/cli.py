"""Command-line entry point for the verification suite."""

from __future__ import annotations

import argparse
import os
import sys

from .verify import (
    ALL_ALGEBRAS,
    CHECK_DESCRIPTIONS,
    CHECK_REGISTRY,
    DEFAULT_ALGEBRAS,
    RunConfig,
    emit_report,
    report_failed,
    run_suite,
)

CACHE_ENV = "SINGLOCUS_CACHE_DIR"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="singlocus-verify",
        description=(
            "Exact verification suite for the degree-r polynomial module "
            "cutting out the singular elements of a split simple Lie algebra."
        ),
    )
    parser.add_argument(
        "--algebra",
        action="append",
        metavar="LABEL",
        help=f"algebra label, repeatable (default A1 A2 B2 C2; supported: {', '.join(ALL_ALGEBRAS)})",
    )
    parser.add_argument(
        "--checks",
        default="all",
        help="comma-separated check ids or 'all' (default)",
    )
    parser.add_argument("--seed", type=int, default=42, help="sampling seed (default 42)")
    parser.add_argument(
        "--format", choices=("json", "markdown"), default="json", help="report format"
    )
    parser.add_argument(
        "--cache-dir",
        default=None,
        help=f"structure-constant cache directory (or ${CACHE_ENV})",
    )
    parser.add_argument(
        "--sample-count",
        action="append",
        default=[],
        metavar="CHECK=N",
        help="override a sample count, e.g. thm-0.1-kappa=5 (repeatable)",
    )
    parser.add_argument("--max-rank", type=int, default=None, help="drop algebras above this rank")
    parser.add_argument(
        "--include-timings",
        action="store_true",
        help="attach wall-clock timings (reports stop being byte-reproducible)",
    )
    parser.add_argument("--output", default=None, help="write the report to a file instead of stdout")
    parser.add_argument("--list-checks", action="store_true", help="list check ids and exit")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.list_checks:
        width = max(len(k) for k in CHECK_REGISTRY)
        for check_id in CHECK_REGISTRY:
            print(f"{check_id.ljust(width)}  {CHECK_DESCRIPTIONS[check_id]}")
        return 0

    sample_counts = {}
    for item in args.sample_count:
        if "=" not in item:
            parser.error(f"--sample-count expects CHECK=N, got {item!r}")
        key, _, value = item.partition("=")
        try:
            sample_counts[key.strip()] = int(value)
        except ValueError:
            parser.error(f"--sample-count expects an integer count, got {item!r}")

    raw = args.checks.strip()
    if raw == "all":
        checks = ["all"]
    else:
        checks = [c.strip() for c in raw.split(",") if c.strip()]

    config = RunConfig(
        algebras=args.algebra or list(DEFAULT_ALGEBRAS),
        checks=checks if checks else [],
        seed=args.seed,
        sample_counts=sample_counts,
        output_format=args.format,
        cache_dir=args.cache_dir or os.environ.get(CACHE_ENV),
        include_timings=args.include_timings,
        max_rank=args.max_rank,
    )
    if not config.checks:
        # empty check list: empty report, success
        report = {
            "schema": "singlocus-report@1",
            "config": {
                "algebras": config.selected_algebras(),
                "checks": [],
                "seed": config.seed,
                "sampleCounts": {},
            },
            "results": {label: {} for label in config.selected_algebras()},
            "summary": {"pass": 0, "fail": 0, "skip": 0},
        }
    else:
        try:
            report = run_suite(config)
        except ValueError as exc:
            parser.error(str(exc))

    text = emit_report(report, args.format)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 1 if report_failed(report) else 0


if __name__ == "__main__":
    raise SystemExit(main())
