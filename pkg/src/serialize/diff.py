"""Axiom-level diff between two ontologies."""
from typing import FrozenSet, List, Mapping, NamedTuple, Optional

from src.owl.model import Axiom, Ontology
from src.serialize.functional import canonical_lines


class AxiomDiff(NamedTuple):
    added: FrozenSet[Axiom]
    removed: FrozenSet[Axiom]

    @property
    def is_empty(self) -> bool:
        return not self.added and not self.removed


def diff(a: Ontology, b: Ontology) -> AxiomDiff:
    """
    Structural difference: ``added = b - a``, ``removed = a - b``.

    Example:
        >>> added, removed = diff(onto, onto)
        >>> added, removed
        (frozenset(), frozenset())
    """
    return AxiomDiff(added=b.axiom_set - a.axiom_set, removed=a.axiom_set - b.axiom_set)


def apply_diff(axioms: FrozenSet[Axiom], d: AxiomDiff) -> FrozenSet[Axiom]:
    return (axioms - d.removed) | d.added


def render_diff(d: AxiomDiff, prefixes: Mapping[str, str], new_prefixes: Optional[Mapping[str, str]] = None) -> List[str]:
    """Removed lines (``-``) then added lines (``+``), each group in canonical order."""
    lines = [f"-{line}" for line in canonical_lines(d.removed, prefixes)]
    lines.extend(f"+{line}" for line in canonical_lines(d.added, new_prefixes or prefixes))
    return lines
