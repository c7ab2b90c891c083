"""Command-line surface: build, check, stats, diff."""
import argparse
import logging
import sys
from contextlib import nullcontext
from enum import IntEnum
from pathlib import Path
from typing import List, NoReturn, Optional

from src import __version__
from src.build import BuildOptions, BuildResult, registry_path_for, run_build
from src.config import Config
from src.errors import OntoforgeError, SerializationError
from src.ingest.manifest import load_manifest_file
from src.ingest.sources import Mode
from src.registry.ids import check_no_regression, registry_lock, render_registry
from src.serialize.diff import diff, render_diff
from src.serialize.functional import serialize_functional
from src.serialize.reader import read_functional_file
from src.serialize.report import render_report
from src.utils import atomic_write_text

logger = logging.getLogger("ontoforge")


class ExitStatus(IntEnum):
    SUCCESS = 0
    BUILD_ERROR = 1
    WARNINGS = 2
    USAGE = 3


# diff reuses BUILD_ERROR for "files differ"
DIFFERENT = ExitStatus.BUILD_ERROR


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """ArgumentParser that raises instead of exiting with argparse's own status."""

    def error(self, message: str) -> NoReturn:
        raise UsageError(f"{self.prog}: error: {message}")


def configure_logging(verbose: bool = False):
    """Diagnostics go to stderr; stdout carries only command output."""
    handlers: List[logging.Handler] = [logging.StreamHandler(sys.stderr)]
    if Config.LOG_FILE:
        handlers.append(logging.FileHandler(Config.LOG_FILE))
    logging.basicConfig(
        level=logging.DEBUG if (verbose or Config.DEBUG) else logging.WARNING,
        format="%(asctime)s [%(levelname)s] %(name)s: %(message)s",
        handlers=handlers,
        force=True,
    )


def _build_options(args: argparse.Namespace, check_only: bool = False) -> BuildOptions:
    return BuildOptions(
        check_only=check_only,
        ids_path=Path(args.ids) if args.ids else None,
        mode_override=Mode(args.mode_override) if args.mode_override else None,
    )


def _print_warnings(result: BuildResult):
    for w in result.warnings:
        print(w, file=sys.stderr)


def cmd_build(args: argparse.Namespace) -> int:
    manifest = load_manifest_file(args.manifest)
    options = _build_options(args)
    registry_path = registry_path_for(manifest, options)

    with registry_lock(registry_path) if registry_path else nullcontext():
        result = run_build(manifest, options)
        _print_warnings(result)
        if result.warnings and args.fail_on_warnings:
            print(f"{len(result.warnings)} warnings; nothing written (--fail-on-warnings)", file=sys.stderr)
            return ExitStatus.WARNINGS

        assert result.ontology is not None and result.report is not None
        # everything that can fail runs before the first write
        text = serialize_functional(result.ontology)
        registry_text: Optional[str] = None
        if result.registry is not None and registry_path is not None:
            check_no_regression(result.registry, registry_path)
            registry_text = render_registry(result.registry)
        atomic_write_text(args.output, text)
        logger.info(f"Wrote {len(result.ontology)} axioms to {args.output}")
        if registry_text is not None:
            atomic_write_text(registry_path, registry_text)
            logger.info(f"Saved {len(result.registry)} identifiers to {registry_path}")

    print(render_report(result.report), end="")
    return ExitStatus.SUCCESS


def cmd_check(args: argparse.Namespace) -> int:
    manifest = load_manifest_file(args.manifest)
    result = run_build(manifest, _build_options(args, check_only=True))
    for error in result.errors:
        print(f"error: {error}")
    for w in result.warnings:
        print(w)
    print(f"{len(result.errors)} errors, {len(result.warnings)} warnings")
    if result.errors:
        return ExitStatus.BUILD_ERROR
    if result.warnings and args.fail_on_warnings:
        return ExitStatus.WARNINGS
    return ExitStatus.SUCCESS


def cmd_stats(args: argparse.Namespace) -> int:
    manifest = load_manifest_file(args.manifest)
    result = run_build(manifest, _build_options(args))
    assert result.report is not None
    print(render_report(result.report), end="")
    return ExitStatus.SUCCESS


def cmd_diff(args: argparse.Namespace) -> int:
    try:
        old = read_functional_file(args.old)
        new = read_functional_file(args.new)
    except SerializationError as e:
        print(f"error: {e}", file=sys.stderr)
        return ExitStatus.USAGE
    d = diff(old, new)
    for line in render_diff(d, old.prefixes, new.prefixes):
        print(line)
    return ExitStatus.SUCCESS if d.is_empty else DIFFERENT


def _add_build_flags(p: argparse.ArgumentParser, fail_on_warnings: bool = True):
    p.add_argument("manifest", help="Build manifest (JSON)")
    p.add_argument("--ids", help="Identifier registry (TSV); switches IRIs to minted identifiers")
    p.add_argument(
        "--mode-override",
        choices=[m.value for m in Mode],
        help="Force release or live mode for every network source",
    )
    if fail_on_warnings:
        p.add_argument("--fail-on-warnings", action="store_true", help="Exit 2 if any warning was raised")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="ontoforge", description="Ontoforge - pattern-first ontology scaffolding")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    ap.add_argument("-v", "--verbose", action="store_true", help="Debug logging on stderr")
    sub = ap.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("build", help="Build the ontology and write functional-syntax output")
    _add_build_flags(p)
    p.add_argument("-o", "--output", required=True, help="Output path (.ofn)")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("check", help="Validate sources and patterns, reporting every error")
    _add_build_flags(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("stats", help="Print class counts per top-level branch")
    _add_build_flags(p, fail_on_warnings=False)
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("diff", help="Axiom-level diff of two build outputs")
    p.add_argument("old")
    p.add_argument("new")
    p.set_defaults(func=cmd_diff)
    return ap


def main(argv: Optional[List[str]] = None) -> int:
    """
    Run the CLI.

    Returns:
        0 success, 1 build error (or differing diff), 2 warnings under --fail-on-warnings, 3 usage
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as e:
        print(e, file=sys.stderr)
        return ExitStatus.USAGE
    if not getattr(args, "func", None):
        parser.print_usage(sys.stderr)
        return ExitStatus.USAGE

    configure_logging(args.verbose)
    try:
        return int(args.func(args))
    except OntoforgeError as e:
        print(f"error: {e}", file=sys.stderr)
        return ExitStatus.BUILD_ERROR
