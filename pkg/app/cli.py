"""Command-line front end.

    python -m app.cli analyze "y^2*z - x^3 - x^2*z"
    python -m app.cli diagram "y^2*z^3 - x^5"
    python -m app.cli verify corpus/theorem_corpus.txt --seed 0

Exit codes: 0 ok, 1 a verification check failed, 2 input or domain error.
"""
import argparse
import logging
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Sequence

from app.cluster import enriques_dot
from app.config import LOG_LEVEL, Settings, settings as default_settings
from app.errors import CurveError
from app.exactpoly import parse_form
from app.models import (
    ErrorOut,
    OutputFormat,
    ReportOut,
    VerifySummaryOut,
    analysis_out,
    error_out,
    report_out,
)
from app.rational import analyze, certify, verify_theorem
from app.resolution import singular_cluster

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_ERROR = 2


def read_corpus(text: str) -> list[str]:
    """Curve lines of a corpus file: one form per line, ``#`` starts a comment."""
    curves = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            curves.append(line)
    return curves


def verify_line(line: str, settings: Settings) -> ReportOut | ErrorOut:
    try:
        return report_out(verify_theorem(parse_form(line), settings))
    except CurveError as err:
        logger.warning("%s: %s", line, err.code)
        return error_out(err, curve=line)
    except Exception as exc:
        # one broken curve must not abort the corpus run
        logger.exception("unexpected failure on %s", line)
        return ErrorOut(curve=line, error=type(exc).__name__, message=str(exc) or type(exc).__name__)


def verify_lines(lines: Sequence[str], settings: Settings) -> VerifySummaryOut:
    """Verify every curve, concurrently, keeping the input order."""
    with ThreadPoolExecutor(max_workers=max(1, settings.workers)) as pool:
        rows = list(pool.map(lambda line: verify_line(line, settings), lines))
    reports = [r for r in rows if isinstance(r, ReportOut)]
    failed = sum(1 for r in reports if any(s.value == "fail" for s in r.checks.values()))
    return VerifySummaryOut(curves=len(rows), failed=failed, errors=len(rows) - len(reports), rows=rows)


def diagram_text(text: str, settings: Settings) -> str:
    curve = certify(parse_form(text), settings.assume_irreducible)
    return enriques_dot(singular_cluster(curve, settings.max_depth))


def _emit(payload, fmt: OutputFormat) -> None:
    if fmt is OutputFormat.json:
        print(payload.model_dump_json(indent=2))
    else:
        print(_as_text(payload))


def _as_text(payload) -> str:
    if isinstance(payload, VerifySummaryOut):
        lines = []
        for row in payload.rows:
            if isinstance(row, ErrorOut):
                lines.append(f"{row.curve}\terror {row.error}: {row.message}")
            else:
                checks = " ".join(f"{k}={v.value}" for k, v in row.checks.items())
                lines.append(f"{row.curve}\tnuTilde={row.nuTilde} dimLC={row.dimLC} |K|={len(row.cluster)}\t{checks}")
        lines.append(f"{payload.curves} curves, {payload.failed} failed, {payload.errors} errors")
        return "\n".join(lines)
    if isinstance(payload, ErrorOut):
        return f"error {payload.error}: {payload.message}"
    data = payload.model_dump(exclude={"cluster", "LC"})
    cluster = getattr(payload, "cluster", [])
    data["cluster"] = ", ".join(f"{p.label}:{p.weight}" for p in cluster) or "-"
    return "\n".join(f"{k}: {v}" for k, v in data.items())


def cmd_analyze(args: argparse.Namespace, settings: Settings) -> int:
    fmt = OutputFormat(args.format or "json")
    try:
        analysis = analyze(parse_form(args.curve), settings)
    except CurveError as err:
        _emit(error_out(err, curve=args.curve), fmt)
        return EXIT_ERROR
    if fmt is OutputFormat.dot:
        sys.stdout.write(enriques_dot(analysis.singular_cluster))
    else:
        _emit(analysis_out(analysis), fmt)
    return EXIT_OK


def cmd_diagram(args: argparse.Namespace, settings: Settings) -> int:
    try:
        dot = diagram_text(args.curve, settings)
    except CurveError as err:
        _emit(error_out(err, curve=args.curve), OutputFormat.json)
        return EXIT_ERROR
    sys.stdout.write(dot)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace, settings: Settings) -> int:
    fmt = OutputFormat(args.format or "json")
    try:
        text = Path(args.corpus).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        _emit(ErrorOut(curve=None, error="IOError", message=str(exc)), fmt)
        return EXIT_ERROR
    summary = verify_lines(read_corpus(text), settings)
    _emit(summary, fmt)
    return EXIT_CHECK_FAILED if summary.failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ratcurves", description="Rational plane curves of nonnegative type")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--assume-irreducible", action="store_true", help="skip the factorization check")
    common.add_argument("--seed", type=int, default=None, help="seed of random members (default from env, 0)")
    common.add_argument("--max-depth", type=int, default=None, help="blow-ups per branch (default 50)")
    common.add_argument("--format", choices=[f.value for f in OutputFormat], default=None)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="singular cluster, nu~, genus and L_C of a curve")
    p.add_argument("curve")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("diagram", parents=[common], help="Enriques diagram of the singular cluster as DOT")
    p.add_argument("curve")
    p.set_defaults(func=cmd_diagram)

    p = sub.add_parser("verify", parents=[common], help="run the theorem checks over a corpus file")
    p.add_argument("corpus")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    logging.basicConfig(level=LOG_LEVEL, format="%(levelname)s %(name)s: %(message)s")
    args = build_parser().parse_args(argv)
    settings = default_settings.override(
        seed=args.seed,
        max_depth=args.max_depth,
        assume_irreducible=args.assume_irreducible or None,
    )
    return args.func(args, settings)


if __name__ == "__main__":
    sys.exit(main())
