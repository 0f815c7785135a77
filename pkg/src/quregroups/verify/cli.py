"""Command-line entry point: ``quregroups verify`` and ``quregroups claims``."""

from __future__ import annotations

import argparse
import json
import sys

from quregroups.verify.report import DEFAULT_SEED, FORMATS, RunConfig, UnknownSuiteError, run
from quregroups.verify.suites import list_claims

EXIT_OK, EXIT_ASSERTED_FAILURE, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="quregroups", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", help="run claim suites and write a report")
    verify.add_argument("--suites", default="all", help="'all' or a comma-separated list such as C1,C8")
    verify.add_argument("--tolerance", type=float, default=1e-9)
    verify.add_argument("--seed", type=int, default=DEFAULT_SEED)
    verify.add_argument("--samples", type=int, default=10_000)
    verify.add_argument("--n-max", type=int, default=4)
    verify.add_argument("--format", choices=FORMATS, default="text")
    verify.add_argument("--out", default=None, help="write the report here instead of stdout")
    verify.add_argument("--jobs", type=int, default=1, help="run suites on this many threads")
    verify.add_argument("--timings", action="store_true", help="include wall-clock per suite (not reproducible)")

    claims = sub.add_parser("claims", help="print the suite catalog")
    claims.add_argument("--format", choices=("text", "json"), default="text")
    return parser


def _claims(fmt: str) -> str:
    catalog = list_claims()
    if fmt == "json":
        return json.dumps(catalog, indent=2) + "\n"
    return "".join(f"{c['id']:<4} {c['kind']:<12} {c['title']}: {c['paper_ref']}\n" for c in catalog)


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)

    if args.command == "claims":
        sys.stdout.write(_claims(args.format))
        return EXIT_OK

    try:
        config = RunConfig(
            suites=tuple(s.strip() for s in args.suites.split(",") if s.strip()),
            tolerance=args.tolerance,
            seed=args.seed,
            samples=args.samples,
            n_max=args.n_max,
            format=args.format,
            out=args.out,
            jobs=args.jobs,
            timings=args.timings,
        )
        config.selected()
    except (ValueError, UnknownSuiteError) as exc:
        parser.error(str(exc))

    report = run(config)
    text = report.render()
    if config.out is None:
        sys.stdout.write(text)
    else:
        try:
            with open(config.out, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"quregroups: cannot write report: {exc}", file=sys.stderr)
            return EXIT_IO
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
