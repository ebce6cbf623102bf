"""Command-line front end: a thin client over the service handlers.

Subcommands
    classify    run a classification and write the JSON report
    verify-map  check a map file against one of the defining identities
    center      compute the window center and its core projection
    serve       launch the HTTP service

Exit codes: 0 success (all residuals pass), 1 usage or parse errors,
2 a mathematical check failed (verification failure or a solved map
falling outside the classified family).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .errors import NotInClassifiedFamily, WAlgebraError
from .service.schemas import (
    CenterRequest,
    ClassifyRequest,
    VerifyMapRequest,
)
from .solver import report_json

ALGEBRA_CHOICES = ("vir", "witt", "w22", "w22-centerless")
PROBLEM_CHOICES = ("biderivation", "derivation", "commuting", "symmetric-biderivation")
CHECK_CHOICES = PROBLEM_CHOICES + ("postlie",)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="walgebra",
        description="Exact window-based classification of biderivations, "
        "derivations and commuting maps on the Virasoro and W(2,2) algebras.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="run a classification problem")
    p.add_argument("--algebra", required=True, choices=ALGEBRA_CHOICES)
    p.add_argument("--problem", required=True, choices=PROBLEM_CHOICES)
    p.add_argument("--window", type=int, default=5, metavar="N")
    p.add_argument("--value-radius", type=int, default=None, metavar="M",
                   help="value support radius (default 2N)")
    p.add_argument("--core", type=int, default=2, metavar="K")
    p.add_argument("--output", type=Path, default=None, metavar="PATH")
    p.add_argument("--summary", action="store_true",
                   help="print a human-readable summary instead of raw JSON")
    p.add_argument("--verbose", "-v", action="store_true",
                   help="print stage timings to stderr")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("verify-map", help="check a map file against an identity")
    p.add_argument("--input", type=Path, required=True, metavar="PATH")
    p.add_argument("--problem", required=True, choices=CHECK_CHOICES,
                   help="which identity to check the map against")
    p.add_argument("--output", type=Path, default=None, metavar="PATH")
    p.add_argument("--summary", action="store_true")
    p.set_defaults(func=cmd_verify_map)

    p = sub.add_parser("center", help="compute the window center basis")
    p.add_argument("--algebra", required=True, choices=ALGEBRA_CHOICES)
    p.add_argument("--window", type=int, default=4, metavar="N")
    p.add_argument("--core", type=int, default=None, metavar="K",
                   help="core projection radius (default N-2)")
    p.add_argument("--output", type=Path, default=None, metavar="PATH")
    p.add_argument("--summary", action="store_true")
    p.set_defaults(func=cmd_center)

    p = sub.add_parser("serve", help="launch the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=cmd_serve)

    return parser


def _emit(report: dict, output: Path | None, summary_lines: list[str] | None) -> None:
    text = report_json(report)
    if output is not None:
        output.write_text(text, encoding="utf-8")
    if summary_lines is not None:
        for line in summary_lines:
            print(line)
    elif output is None:
        sys.stdout.write(text)


def cmd_classify(args) -> int:
    from .service.app import run_classify

    req = ClassifyRequest(
        algebra=args.algebra,
        problem=args.problem,
        window=args.window,
        value_radius=args.value_radius,
        core=args.core,
    )
    report = run_classify(req)
    if args.verbose:
        for stage, ms in report["timings_ms"].items():
            print(f"walgebra: {stage}: {ms:.1f} ms", file=sys.stderr)
    summary = None
    if args.summary:
        summary = [
            f"problem={report['problem']} algebra={report['algebra']} "
            f"N={report['N']} M={report['M']} K={report['K']}",
            f"raw dimension: {report['raw_dimension']}",
            f"core dimension: {report['core_dimension']}",
        ]
        for i, p in enumerate(report.get("parameters", [])):
            summary.append(f"vector {i}: lambda={p['lambda']} mu={p['mu']}")
        summary.append(f"residual check: {report['residual_check']}")
    _emit(report, args.output, summary)
    if report["residual_check"] != "pass":
        print("walgebra: residual re-check failed", file=sys.stderr)
        return 2
    return 0


def cmd_verify_map(args) -> int:
    from .service.app import run_verify
    from .schemas_io import load_map_request  # lazy: avoids cycles at import time

    req = load_map_request(args.input, args.problem)
    report = run_verify(req)
    summary = None
    if args.summary:
        summary = [
            f"check={report['check']} algebra={report['algebra']} "
            f"window={report['window']} kind={report['kind']}",
            f"status: {report['status']} ({report['failure_count']} failing tuples)",
        ]
        for f in report["failures"]:
            summary.append(
                f"  fail {f['identity']} at ({', '.join(f['tuple'])}): {f['residual_text']}"
            )
    _emit(report, args.output, summary)
    return 0 if report["status"] == "pass" else 2


def cmd_center(args) -> int:
    from .service.app import run_center

    req = CenterRequest(algebra=args.algebra, window=args.window, core=args.core)
    report = run_center(req)
    summary = None
    if args.summary:
        summary = [
            f"center algebra={report['algebra']} N={report['N']} K={report['K']}",
            f"window dimension: {report['window_dimension']}",
            f"core dimension: {report['core_dimension']}",
        ] + [f"  core basis: {t}" for t in report["core_basis_text"]]
    _emit(report, args.output, summary)
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    uvicorn.run("walgebra.service.app:app", host=args.host, port=args.port)
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 1 if e.code else 0
    try:
        return args.func(args)
    except NotInClassifiedFamily as e:
        print(f"walgebra: solver: {e}", file=sys.stderr)
        return 2
    except WAlgebraError as e:
        print(f"walgebra: {type(e).__name__}: {e}", file=sys.stderr)
        return 1
    except OSError as e:
        print(f"walgebra: io: {e}", file=sys.stderr)
        return 1
    except ValueError as e:  # pydantic validation on requests
        print(f"walgebra: config: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
