"""Command line entry point: ``modindex analyze | evolve | explain``.

Exit codes: 0 success, 1 usage error, 2 analysis finished but reported
error diagnostics, 3 internal failure.
"""
from __future__ import annotations

import argparse
import logging
import sys
import traceback
from pathlib import Path

from .charts import write_charts
from .config import ExtractionConfig, load_config
from .errors import ModIndexError
from .evolution import analyze_series, load_manifest
from .java.frontend import extract_project
from .model import has_errors
from .quality import analyze_system
from .report import ReportDocument, dumps, evolution_document, explain, render_csv

EXIT_OK, EXIT_USAGE, EXIT_DIAGNOSTICS, EXIT_INTERNAL = 0, 1, 2, 3

log = logging.getLogger("modindex")


class _UsageExit(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise _UsageExit(f"{self.prog}: error: {message}")


def _positive(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if n <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {n}")
    return n


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="modindex", description="Modularity Index analysis of Java source trees.")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    common = _Parser(add_help=False)
    common.add_argument("--config", type=Path, help="key=value file with extraction settings")
    common.add_argument("--workers", type=_positive,
                        help="parser threads (default: MODINDEX_THREADS or CPU count)")

    a = sub.add_parser("analyze", parents=[common], help="analyze one source tree")
    a.add_argument("root", type=Path)
    a.add_argument("--format", choices=("json", "csv"), default="json")
    a.add_argument("--out", type=Path, help="write the report here instead of stdout")
    a.add_argument("--matrix", action="store_true",
                   help="dump the package dependency matrix to stderr")
    a.add_argument("--worst", type=_positive, metavar="N",
                   help="list the N classes with the lowest class quality")

    e = sub.add_parser("evolve", parents=[common], help="analyze every version in a manifest")
    e.add_argument("manifest", type=Path)
    e.add_argument("--format", choices=("json", "csv"), default="json")
    e.add_argument("--out", type=Path, help="write the table here instead of stdout")
    e.add_argument("--charts", type=Path, metavar="DIR", help="write one SVG chart per series")

    x = sub.add_parser("explain", parents=[common], help="show how one class's quality arises")
    x.add_argument("root", type=Path)
    x.add_argument("--class", dest="class_name", required=True, metavar="QUALIFIED_NAME")
    return parser


def _config(args) -> ExtractionConfig:
    return load_config(args.config) if args.config else ExtractionConfig()


def _emit(text: str, out: Path | None):
    if out is None:
        sys.stdout.write(text)
    else:
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(text, encoding="utf-8")


def _report_diagnostics(diagnostics) -> int:
    for d in diagnostics:
        print(d, file=sys.stderr)
    return EXIT_DIAGNOSTICS if has_errors(diagnostics) else EXIT_OK


def _analyze(args) -> int:
    config = _config(args)
    project = extract_project(args.root, config, workers=args.workers)
    analysis = analyze_system(project, config)
    doc = ReportDocument.from_analysis(analysis, worst=args.worst)
    _emit(doc.to_json() if args.format == "json" else render_csv(doc), args.out)
    if args.matrix:
        print(analysis.matrix.format(), file=sys.stderr)
    if args.worst:
        print(f"worst {len(doc.worst_offenders)} classes by class quality:", file=sys.stderr)
        for o in doc.worst_offenders:
            print(f"  {o.c_q:.6f}  {o.name}  (NCLOC {o.ncloc}, F {o.f}, LCOM4 {o.lcom4}; "
                  f"weakest {o.lever} = {o.lever_value:.6f})", file=sys.stderr)
    return _report_diagnostics(analysis.diagnostics)


def _evolve(args) -> int:
    config = _config(args)
    series = load_manifest(args.manifest)
    table = analyze_series(series, config, workers=args.workers)
    text = dumps(evolution_document(table)) if args.format == "json" else render_csv(table)
    _emit(text, args.out)
    if args.charts:
        for path in write_charts(table, args.charts):
            log.info("wrote %s", path)
    for label, reason in table.failures:
        print(f"{label}: error: version skipped: {reason}", file=sys.stderr)
    return EXIT_DIAGNOSTICS if table.failures else EXIT_OK


def _explain(args) -> int:
    config = _config(args)
    project = extract_project(args.root, config, workers=args.workers)
    doc = ReportDocument.from_analysis(analyze_system(project, config))
    sys.stdout.write(explain(doc, args.class_name))
    return EXIT_OK


COMMANDS = {"analyze": _analyze, "evolve": _evolve, "explain": _explain}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageExit as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return EXIT_OK if not exc.code else EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s", stream=sys.stderr)
    try:
        return COMMANDS[args.command](args)
    except ModIndexError as exc:
        print(f"modindex: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Exception:
        traceback.print_exc(file=sys.stderr)
        print("modindex: internal failure (this is a bug)", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
