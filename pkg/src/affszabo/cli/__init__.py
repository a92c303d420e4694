"""Batch command-line front end."""

from __future__ import annotations

import argparse
import re
import sys

from ..symexpr import SymexprError
from .commands import COMMANDS, CommandError, Options, run_command
from .manifest import (
    Manifest,
    ManifestError,
    ManifestSyntaxError,
    ValidationError,
    load_manifest,
    parse_manifest,
    parse_point,
    same_manifest,
    write_manifest,
)
from .report import Report, emit_report

__all__ = [
    "COMMANDS", "CommandError", "Options", "run_command", "Manifest", "ManifestError",
    "ManifestSyntaxError", "ValidationError", "load_manifest", "parse_manifest", "parse_point",
    "same_manifest", "write_manifest", "Report", "emit_report", "main",
]

EXIT_TRUE, EXIT_FALSE, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2, 3


def _grid(text: str) -> tuple:
    m = re.fullmatch(r"\s*(-?\d+)\s*\.\.\s*(-?\d+)\s*", text)
    if not m or int(m.group(1)) > int(m.group(2)):
        raise argparse.ArgumentTypeError("expected lo..hi with lo <= hi")
    return int(m.group(1)), int(m.group(2))


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="affszabo", description="Exact analysis of affine Szabó connections.")
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("--manifest", help="connection manifest file")
    ap.add_argument("--format", choices=("text", "json"), default="text")
    ap.add_argument("--direction", help="restrict to one named direction")
    ap.add_argument("--point", default="", help="coordinate bindings, e.g. u1=1/2,u2=3")
    ap.add_argument("--grid", type=_grid, help="integer sweep range lo..hi (classify commands)")
    ap.add_argument("--corrected", action="store_true",
                    help="use the rederived (not the reference) Type B conditions")
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code else EXIT_TRUE
    try:
        m = load_manifest(args.manifest) if args.manifest else None
        table = m.table() if m is not None else None
        point = parse_point(args.point, table) if args.point and table is not None else {}
        if args.point and table is None:
            raise CommandError("--point needs --manifest")
        opts = Options(args.direction, point, args.grid, args.corrected)
        report = run_command(m, args.command, opts)
    except (ManifestError, CommandError, SymexprError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except Exception as e:  # pragma: no cover - contract: anything else is internal
        print(f"internal error in {args.command}: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_INTERNAL
    sys.stdout.buffer.write(emit_report(report, args.format))
    sys.stdout.flush()
    return EXIT_FALSE if report.verdict is False else EXIT_TRUE
