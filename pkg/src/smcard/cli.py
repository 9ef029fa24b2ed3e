"""Command-line interface: ``smcard validate|inspect|compare|export``.

Exit codes: 0 success, 1 a card has validation errors, 2 usage or I/O
failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections.abc import Sequence

from . import __version__
from .analysis import (
    CRITERIA,
    DEFAULT_TOLERANCE,
    card_summary,
    check_consistency,
    compare_cards,
    parse_criterion,
)
from .diagnostics import Diagnostic, severity_summary
from .errors import EmptyComparison, MissingTraining
from .export import ExportFormat, RenderOptions, render
from .loading import LoadedCard, load_text

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_USAGE = 2

_COLORS = {"Error": "\033[31m", "Warning": "\033[33m"}
_RESET = "\033[0m"


class _UsageError(Exception):
    pass


def _read(path: str) -> LoadedCard:
    try:
        if path == "-":
            data = sys.stdin.buffer.read()
            return load_text(data, "<stdin>")
        with open(path, "rb") as handle:
            data = handle.read()
    except OSError as exc:
        raise _UsageError(f"cannot read {path}: {exc.strerror or exc}") from None
    return load_text(data, path)


def _format_diag(diag: Diagnostic, color: bool) -> str:
    text = str(diag)
    if color:
        return f"{_COLORS[diag.severity.value]}{text}{_RESET}"
    return text


def _print_diagnostics(loaded: LoadedCard, diags: list[Diagnostic], out) -> None:
    color = out.isatty()
    for diag in diags:
        print(f"{loaded.source}:{_format_diag(diag, color)}", file=out)


def _strict(diags: list[Diagnostic], strict: bool) -> int:
    summary = severity_summary(diags)
    return summary.errors + (summary.warnings if strict else 0)


def cmd_validate(args, out) -> int:
    status = EXIT_OK
    reports = []
    for path in args.paths:
        try:
            loaded = _read(path)
        except _UsageError as exc:
            print(f"smcard: {exc}", file=sys.stderr)
            status = EXIT_USAGE
            if args.format == "json":
                reports.append({"file": path, "error": str(exc)})
            continue
        summary = loaded.summary
        if _strict(loaded.diagnostics, args.strict) and status == EXIT_OK:
            status = EXIT_INVALID
        if args.format == "json":
            reports.append(
                {
                    "file": loaded.source,
                    **summary.to_dict(),
                    "diagnostics": [d.to_dict() for d in loaded.diagnostics],
                }
            )
        else:
            _print_diagnostics(loaded, loaded.diagnostics, out)
            print(f"{loaded.source}: {summary.errors} errors, {summary.warnings} warnings", file=out)
    if args.format == "json":
        print(json.dumps(reports, indent=2, ensure_ascii=False), file=out)
    return status


def _require_valid(loaded: LoadedCard, out, fmt: str) -> bool:
    if loaded.valid:
        return True
    if fmt == "json":
        print(
            json.dumps({"file": loaded.source, "diagnostics": [d.to_dict() for d in loaded.diagnostics]}, indent=2),
            file=out,
        )
    else:
        _print_diagnostics(loaded, loaded.diagnostics, out)
        print(f"{loaded.source}: card has validation errors", file=out)
    return False


def _fmt(value) -> str:
    return "-" if value is None else f"{value:.12g}"


def cmd_inspect(args, out) -> int:
    loaded = _read(args.path)
    if not _require_valid(loaded, out, args.format):
        return EXIT_INVALID
    card = loaded.card
    summary = card_summary(card)
    reports, warnings = check_consistency(card, args.tolerance)
    if args.format == "json":
        data = summary.to_dict()
        data["consistency"] = [report.to_dict() for report in reports]
        data["diagnostics"] = [d.to_dict() for d in loaded.diagnostics + warnings]
        print(json.dumps(data, indent=2, ensure_ascii=False), file=out)
        return EXIT_OK

    print(f"{summary.name} {summary.version} ({summary.model_type}, {summary.provider}, {summary.license})", file=out)
    if summary.training is not None:
        t = summary.training
        print(
            f"training: {_fmt(t.hours)} h on {t.platform}: {_fmt(t.energy_Wh)} Wh, "
            f"{_fmt(t.carbon_gCO2eq)} gCO2eq, {_fmt(t.water_L)} L",
            file=out,
        )
    for task in summary.inference:
        print(
            f"inference {task.inference_type} on {task.platform}: {_fmt(task.energy_Wh)} Wh, "
            f"{_fmt(task.carbon_gCO2eq)} gCO2eq, {_fmt(task.water_L)} L",
            file=out,
        )
    for platform in summary.platforms:
        if platform.offset_fraction is not None:
            offset = f"offset {platform.offset_fraction:.0%}"
        elif platform.offset_kgCO2eq is not None:
            offset = f"offset {_fmt(platform.offset_kgCO2eq)} kgCO2eq"
        else:
            offset = "no offset"
        intensity = (
            "no energy mix"
            if platform.intensity_gCO2eq_per_kWh is None
            else f"{_fmt(platform.intensity_gCO2eq_per_kWh)} gCO2eq/kWh"
        )
        print(f"platform {platform.name}: {platform.hardware}, {platform.provider}, {platform.region}; {intensity}; {offset}", file=out)
    for report in reports:
        verdict = "ok" if report.within_tolerance else "out of tolerance"
        print(
            f"consistency {report.subject}: declared {_fmt(report.declared_carbon.value)} gCO2eq, "
            f"implied {_fmt(report.implied_carbon.value)} gCO2eq, deviation {report.relative_deviation:.2%} ({verdict})",
            file=out,
        )
    _print_diagnostics(loaded, loaded.diagnostics + warnings, out)
    return EXIT_OK


def cmd_compare(args, out) -> int:
    try:
        criterion = parse_criterion(args.criterion, args.task)
    except ValueError as exc:
        raise _UsageError(str(exc)) from None
    cards = []
    status = EXIT_OK
    for path in args.paths:
        loaded = _read(path)
        if not _require_valid(loaded, out if args.format == "text" else sys.stderr, args.format):
            status = EXIT_INVALID
            continue
        cards.append(loaded.card)
    if status != EXIT_OK:
        return status
    try:
        ranking = compare_cards(cards, criterion)
    except EmptyComparison as exc:
        if args.format == "json":
            print(json.dumps({"criterion": criterion.label, "ranking": [], "excluded": [
                {"card_name": c.meta_data.name, "card_version": c.meta_data.version} for c in cards
            ]}, indent=2), file=out)
        else:
            print(f"no ranking: {exc}", file=out)
        return EXIT_OK
    if args.format == "json":
        print(json.dumps(ranking.to_dict(), indent=2, ensure_ascii=False), file=out)
        return EXIT_OK
    print(f"ranking by {criterion.label} ({criterion.unit}, lower is better):", file=out)
    for rank, entry in enumerate(ranking, start=1):
        print(f"{rank}. {entry.card_name} {entry.card_version}: {_fmt(entry.score)} {entry.unit}", file=out)
    for card in ranking.excluded:
        print(f"excluded: {card.meta_data.name} {card.meta_data.version} (does not report {criterion.label})", file=out)
    return EXIT_OK


def cmd_export(args, out) -> int:
    loaded = _read(args.path)
    if not _require_valid(loaded, sys.stderr, "text"):
        return EXIT_INVALID
    options = RenderOptions(
        format=ExportFormat(args.to),
        include_warnings=args.include_warnings,
        canonical_only=args.canonical_only,
    )
    try:
        text = render(loaded.card, options, loaded.diagnostics)
    except MissingTraining as exc:
        print(f"smcard: {exc}", file=sys.stderr)
        return EXIT_INVALID
    if args.out is None:
        out.write(text)
        return EXIT_OK
    try:
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write(text)
    except OSError as exc:
        raise _UsageError(f"cannot write {args.out}: {exc.strerror or exc}") from None
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="smcard", description="Work with Sustainability Model Card files.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    commands = parser.add_subparsers(dest="command", required=True)

    p = commands.add_parser("validate", help="check cards and report diagnostics")
    p.add_argument("paths", nargs="+", help="card files, or - for standard input")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--strict", action="store_true", help="treat warnings as errors")
    p.set_defaults(handler=cmd_validate)

    p = commands.add_parser("inspect", help="show canonicalized metrics and consistency checks")
    p.add_argument("path")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--tolerance", type=float, default=DEFAULT_TOLERANCE, help="relative deviation allowed (default 0.02)")
    p.set_defaults(handler=cmd_inspect)

    p = commands.add_parser("compare", help="rank cards by environmental impact")
    p.add_argument("paths", nargs="+")
    p.add_argument("--criterion", required=True, choices=tuple(CRITERIA))
    p.add_argument("--task", help="inference type for inference-* criteria")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(handler=cmd_compare)

    p = commands.add_parser("export", help="render a card in another format")
    p.add_argument("path")
    p.add_argument("--to", choices=tuple(f.value for f in ExportFormat), default="yaml")
    p.add_argument("--out", help="output file (default: standard output)")
    p.add_argument("--include-warnings", action="store_true")
    p.add_argument("--canonical-only", action="store_true", help="Markdown: show canonical units only")
    p.set_defaults(handler=cmd_export)
    return parser


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.handler(args, out)
    except _UsageError as exc:
        print(f"smcard: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
