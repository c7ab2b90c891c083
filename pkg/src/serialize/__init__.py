"""Serialize module - Functional-syntax output, canonical reader, axiom diff and build statistics."""

from src.serialize.diff import AxiomDiff, apply_diff, diff, render_diff
from src.serialize.functional import canonical_lines, render_axiom, render_iri, serialize_functional
from src.serialize.reader import read_functional, read_functional_file
from src.serialize.report import SUPPORT, BuildReport, render_report, report_frame, stats

__all__ = [
    # Diff
    "AxiomDiff",
    "apply_diff",
    "diff",
    "render_diff",
    # Functional syntax
    "canonical_lines",
    "render_axiom",
    "render_iri",
    "serialize_functional",
    "read_functional",
    "read_functional_file",
    # Report
    "SUPPORT",
    "BuildReport",
    "render_report",
    "report_frame",
    "stats",
]
