"""Pattern table and the single instantiation entry point used by manifest-driven builds."""
import logging
from dataclasses import dataclass
from typing import Any, Callable, Dict, List, Mapping, Optional, Tuple

from src.errors import PatternError, SourceSpan
from src.owl.model import Ontology
from src.patterns.scaffold import (
    DiseaseRecord,
    TermRecord,
    disease_class,
    gene_class,
    named_subclass,
    paper_class,
    term_class,
)
from src.registry.environment import Environment

logger = logging.getLogger("ontoforge")

PatternFunc = Callable[[Mapping[str, Any], Ontology, Environment, Optional[SourceSpan]], Ontology]


@dataclass(frozen=True)
class PatternSpec:
    """
    A registered pattern.

    Attributes:
        name: Name used by manifests
        func: Expansion ``(bindings, ontology, env, span) -> ontology``
        required: Parameters every instantiation must bind
        optional: Parameters that may be absent
        formats: Source formats whose records this pattern consumes
        parent: Fixed top-level parent, or None when the parent is a binding
    """

    name: str
    func: PatternFunc
    required: Tuple[str, ...]
    optional: Tuple[str, ...] = ()
    formats: Tuple[str, ...] = ("name-list",)
    parent: Optional[str] = None

    @property
    def parameters(self) -> Tuple[str, ...]:
        return self.required + self.optional


def _gene(b: Mapping[str, Any], onto: Ontology, env: Environment, span: Optional[SourceSpan]) -> Ontology:
    return gene_class(b["name"], onto, env, span)


def _disease(b: Mapping[str, Any], onto: Ontology, env: Environment, span: Optional[SourceSpan]) -> Ontology:
    record = DiseaseRecord(b["name"], b.get("omim") or None, b.get("long_name") or None, span)
    return disease_class(record, onto, env)


def _named(b: Mapping[str, Any], onto: Ontology, env: Environment, span: Optional[SourceSpan]) -> Ontology:
    return named_subclass(b["name"], b["parent"], onto, env, span)


def _paper(b: Mapping[str, Any], onto: Ontology, env: Environment, span: Optional[SourceSpan]) -> Ontology:
    return paper_class(b["name"], onto, env, span)


def _term(b: Mapping[str, Any], onto: Ontology, env: Environment, span: Optional[SourceSpan]) -> Ontology:
    return term_class(TermRecord(b["paper_id"], b["term"], span), onto, env)


_BUILTIN = [
    PatternSpec("gene", _gene, ("name",), parent="Gene"),
    PatternSpec("disease", _disease, ("name",), ("omim", "long_name"), formats=("disease-table",), parent="Disease"),
    PatternSpec("named", _named, ("name", "parent")),
    PatternSpec("paper", _paper, ("name",), parent="Paper"),
    PatternSpec("term", _term, ("paper_id", "term"), formats=("paper-terms",), parent="Term"),
]

PATTERNS: Dict[str, PatternSpec] = {p.name: p for p in _BUILTIN}


def register_pattern(spec: PatternSpec, replace: bool = False):
    """
    Add a project-specific pattern to the table.

    Raises:
        PatternError: if the name is taken and ``replace`` is False
    """
    if spec.name in PATTERNS and not replace:
        raise PatternError(f"pattern already registered: {spec.name}")
    PATTERNS[spec.name] = spec
    logger.debug(f"Registered pattern {spec.name} ({', '.join(spec.parameters)})")


def unregister_pattern(name: str):
    PATTERNS.pop(name, None)


def registered_patterns() -> List[str]:
    return sorted(PATTERNS)


def get_pattern(name: str, span: Optional[SourceSpan] = None) -> PatternSpec:
    spec = PATTERNS.get(name)
    if spec is None:
        raise PatternError(f"unknown pattern: {name} (registered: {', '.join(registered_patterns())})", span)
    return spec


def instantiate(
    pattern_name: str,
    bindings: Mapping[str, Any],
    ontology: Ontology,
    env: Environment,
    span: Optional[SourceSpan] = None,
) -> Ontology:
    """
    Expand one pattern instantiation.

    Args:
        pattern_name: Registered pattern name
        bindings: Parameter values; optional parameters may be missing or None
        ontology: Ontology to extend
        env: Build environment
        span: Source coordinates of the record, for diagnostics

    Returns:
        The extended ontology

    Example:
        >>> onto = instantiate("gene", {"name": "G1"}, onto, env)
    """
    spec = get_pattern(pattern_name, span)
    for param in spec.required:
        value = bindings.get(param)
        if value is None or (isinstance(value, str) and not value.strip()):
            raise PatternError(f"pattern {spec.name}: missing required binding '{param}'", span)
    unexpected = sorted(set(bindings) - set(spec.parameters))
    if unexpected:
        raise PatternError(f"pattern {spec.name}: unexpected binding(s) {', '.join(unexpected)}", span)
    return spec.func(bindings, ontology, env, span)
