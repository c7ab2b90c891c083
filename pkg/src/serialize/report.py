"""Build statistics: class counts per top-level branch, mirroring the scaffold's source table."""
from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Sequence

import pandas as pd

from src.owl.model import Declaration, EntityRef, EntitySort, Named, Ontology, SubClassOf
from src.patterns.scaffold import PAPER, SCAFFOLD_PARENTS, TERM, TERM_LAYER, TOP_LEVEL, display_name

SUPPORT = "support"


@dataclass
class BuildReport:
    """
    Counts of one build.

    Attributes:
        counts: Classes per top-level label, plus ``support`` for classes with no top-level ancestor
        scaffold_total: Sum over the five scaffold parents
        term_total: Term-layer classes (subclasses of Term)
        warning_count: Warnings raised while building
        axiom_counts: Axioms per kind
        sources: Data sources per top-level label, for display
    """

    counts: Dict[str, int]
    scaffold_total: int
    term_total: int
    warning_count: int = 0
    axiom_counts: Dict[str, int] = field(default_factory=dict)
    sources: Dict[str, List[str]] = field(default_factory=dict)


def _top_level_groups(ontology: Ontology) -> Dict[EntityRef, str]:
    """Group every declared class by its nearest asserted top-level ancestor (no inference)."""
    parents: Dict[EntityRef, List[EntityRef]] = {}
    for ax in ontology.axioms:
        if isinstance(ax, SubClassOf) and isinstance(ax.sup, Named):
            parents.setdefault(ax.sub, []).append(ax.sup.entity)

    classes = [ax.entity for ax in ontology.axioms if isinstance(ax, Declaration) and ax.sort is EntitySort.CLASS]
    top = {c: c.label for c in classes if c.label in TOP_LEVEL}
    order = {label: i for i, label in enumerate(TOP_LEVEL)}

    groups: Dict[EntityRef, str] = {}
    for cls in classes:
        if cls in top:
            groups[cls] = SUPPORT
            continue
        seen = {cls}
        frontier = [cls]
        found: Optional[str] = None
        while frontier and found is None:
            nxt = [p for c in frontier for p in parents.get(c, ()) if p not in seen]
            hits = [top[p] for p in nxt if p in top]
            if hits:
                found = min(hits, key=order.__getitem__)
            seen.update(nxt)
            frontier = nxt
        groups[cls] = found or SUPPORT
    return groups


def stats(
    ontology: Ontology,
    warnings: Sequence[object] = (),
    sources: Optional[Mapping[str, Sequence[str]]] = None,
) -> BuildReport:
    """
    Count class declarations by top-level branch.

    Args:
        ontology: Built ontology
        warnings: Warnings of the build (only counted)
        sources: Optional top-level label -> data source names, carried into the report

    Returns:
        BuildReport; every class lands in exactly one group, so the groups sum to the number
        of class declarations
    """
    counts: Dict[str, int] = {label: 0 for label in TOP_LEVEL}
    counts[SUPPORT] = 0
    for group in _top_level_groups(ontology).values():
        counts[group] += 1
    kinds = Counter(type(ax).__name__ for ax in ontology.axioms)
    return BuildReport(
        counts=counts,
        scaffold_total=sum(counts[p] for p in SCAFFOLD_PARENTS),
        term_total=counts[TERM],
        warning_count=len(warnings),
        axiom_counts={k: kinds.get(k, 0) for k in ("Declaration", "SubClassOf", "AnnotationAssertion")},
        sources={k: list(v) for k, v in (sources or {}).items()},
    )


# sources listed by name before the cell collapses to a count
MAX_LISTED_SOURCES = 3


def _source_cell(names: Sequence[str]) -> str:
    if not names:
        return "-"
    if len(names) > MAX_LISTED_SOURCES:
        return f"{names[0]} (+{len(names) - 1} more)"
    return ", ".join(names)


def report_frame(report: BuildReport) -> pd.DataFrame:
    """The class-type / count / data-source table; term-layer rows only when present."""
    labels = list(SCAFFOLD_PARENTS) + [
        label for label in TERM_LAYER if report.counts.get(label) or report.sources.get(label)
    ]
    rows = [
        {
            "Class type": display_name(label),
            "Count": report.counts.get(label, 0),
            "Data source": _source_cell(report.sources.get(label, [])),
        }
        for label in labels
    ]
    return pd.DataFrame(rows, columns=["Class type", "Count", "Data source"])


def render_report(report: BuildReport) -> str:
    table = report_frame(report).to_string(index=False, justify="left")
    axioms = ", ".join(f"{k}={v}" for k, v in report.axiom_counts.items())
    lines = [
        table,
        "",
        f"Scaffold total: {report.scaffold_total}",
        f"Term layer: {report.term_total} terms from {report.counts.get(PAPER, 0)} papers",
        f"Support classes: {report.counts.get(SUPPORT, 0)}",
        f"Axioms: {axioms}",
        f"Warnings: {report.warning_count}",
    ]
    return "\n".join(lines) + "\n"
