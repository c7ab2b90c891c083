"""Deterministic OWL 2 functional-style syntax emission."""
import logging
import re
from typing import List, Mapping, Tuple, Union

from src.errors import SerializationError
from src.owl.model import (
    AXIOM_KIND_RANK,
    AnnotationAssertion,
    Axiom,
    ClassExpression,
    Declaration,
    EntityRef,
    IntersectionOf,
    Named,
    Ontology,
    Only,
    Some,
    SubClassOf,
    UnionOf,
    undeclared_references,
)

logger = logging.getLogger("ontoforge")

LOCAL_NAME = re.compile(r"(?:[A-Za-z0-9_]|%[0-9A-Fa-f]{2})(?:[A-Za-z0-9_\-]|%[0-9A-Fa-f]{2})*")

_EXPRESSION_FUNCTORS = {
    Some: "ObjectSomeValuesFrom",
    Only: "ObjectAllValuesFrom",
    UnionOf: "ObjectUnionOf",
    IntersectionOf: "ObjectIntersectionOf",
}


def render_iri(iri: str, prefixes: Mapping[str, str]) -> str:
    """Abbreviate with the longest matching prefix when the remainder is a plain local name."""
    best: Tuple[int, str] = (-1, f"<{iri}>")
    for name, stem in prefixes.items():
        if stem and iri.startswith(stem) and len(stem) > best[0]:
            local = iri[len(stem):]
            if LOCAL_NAME.fullmatch(local):
                best = (len(stem), f"{name}:{local}")
    return best[1]


def render_literal(value: Union[str, bool]) -> str:
    if isinstance(value, bool):
        return f'"{str(value).lower()}"^^xsd:boolean'
    if "\n" in value or "\r" in value:
        raise SerializationError(f"literal contains a line break: {value!r}")
    escaped = value.replace("\\", "\\\\").replace('"', '\\"')
    return f'"{escaped}"'


def render_expression(expr: ClassExpression, prefixes: Mapping[str, str]) -> str:
    if isinstance(expr, Named):
        return render_iri(expr.entity.iri, prefixes)
    functor = _EXPRESSION_FUNCTORS[type(expr)]
    if isinstance(expr, (Some, Only)):
        return f"{functor}({render_iri(expr.property.iri, prefixes)} {render_expression(expr.filler, prefixes)})"
    return f"{functor}({' '.join(render_expression(op, prefixes) for op in expr.operands)})"


def render_axiom(axiom: Axiom, prefixes: Mapping[str, str]) -> str:
    """Canonical one-line rendering; also the secondary sort key of the output."""
    if isinstance(axiom, Declaration):
        return f"Declaration({axiom.sort.value}({render_iri(axiom.entity.iri, prefixes)}))"
    if isinstance(axiom, SubClassOf):
        return f"SubClassOf({render_iri(axiom.sub.iri, prefixes)} {render_expression(axiom.sup, prefixes)})"
    if isinstance(axiom, AnnotationAssertion):
        return (
            f"AnnotationAssertion({render_iri(axiom.property.value, prefixes)} "
            f"{render_iri(axiom.subject.iri, prefixes)} {render_literal(axiom.value)})"
        )
    raise TypeError(f"not an axiom: {axiom!r}")


def canonical_lines(axioms, prefixes: Mapping[str, str]) -> List[str]:
    """Render and order axioms: kind first (Declaration, SubClassOf, AnnotationAssertion), then text."""
    keyed = [(AXIOM_KIND_RANK[type(ax)], render_axiom(ax, prefixes)) for ax in axioms]
    keyed.sort()
    return [line for _, line in keyed]


def serialize_functional(ontology: Ontology) -> str:
    """
    Emit the ontology as functional-style syntax.

    Output is a pure function of the axiom set: prefixes sorted by name, one axiom per line in
    canonical order, LF line endings, no trailing whitespace.

    Raises:
        SerializationError: if some entity is used without a declaration
    """
    missing = undeclared_references(ontology)
    if missing:
        names = ", ".join(sorted(_describe(ref) for ref in missing))
        raise SerializationError(f"refusing to serialize: undeclared entities: {names}")
    out = [f"Prefix({name}:=<{stem}>)" for name, stem in sorted(ontology.prefixes.items())]
    out.append("")
    out.append(f"Ontology(<{ontology.iri}>")
    out.extend(canonical_lines(ontology.axioms, ontology.prefixes))
    out.append(")")
    logger.debug(f"serialize_functional: {len(ontology)} axioms")
    return "\n".join(out) + "\n"


def _describe(ref: EntityRef) -> str:
    return f"{ref.label} <{ref.iri}>"
