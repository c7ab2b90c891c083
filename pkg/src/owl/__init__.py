"""OWL module - Axiom model and class-expression combinators."""

from src.owl.expr import (
    Frame,
    frame_axioms,
    intersection,
    object_property,
    only,
    owl_class,
    some,
    some_only,
    union,
)
from src.owl.model import (
    AnnotationAssertion,
    AnnotationProperty,
    Axiom,
    ClassExpression,
    Declaration,
    EntityRef,
    EntitySort,
    IntersectionOf,
    Named,
    Ontology,
    Only,
    Some,
    SubClassOf,
    UnionOf,
    add_axioms,
    declared_entities,
    signature,
    undeclared_references,
)

__all__ = [
    # Model
    "AnnotationAssertion",
    "AnnotationProperty",
    "Axiom",
    "ClassExpression",
    "Declaration",
    "EntityRef",
    "EntitySort",
    "IntersectionOf",
    "Named",
    "Ontology",
    "Only",
    "Some",
    "SubClassOf",
    "UnionOf",
    "add_axioms",
    "declared_entities",
    "signature",
    "undeclared_references",
    # Expressions
    "Frame",
    "frame_axioms",
    "intersection",
    "object_property",
    "only",
    "owl_class",
    "some",
    "some_only",
    "union",
]
