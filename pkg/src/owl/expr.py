"""
Class-expression combinators with broadcasting.

``some`` and ``only`` apply a property to each filler in turn, one expression per filler;
``some_only`` adds the covering axiom, a universal over the union of the fillers.
"""
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, List, Optional, Sequence, Tuple, Union

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
    expression_entities,
)

if TYPE_CHECKING:
    from src.registry.environment import Environment

Filler = Union[ClassExpression, EntityRef]


def _as_expression(x: Filler) -> ClassExpression:
    return Named(x) if isinstance(x, EntityRef) else x


def _operands(fillers: Sequence[Filler]) -> List[ClassExpression]:
    if not fillers:
        raise ValueError("broadcast over empty operand list")
    return [_as_expression(f) for f in fillers]


def some(property: EntityRef, fillers: Sequence[Filler]) -> List[ClassExpression]:
    """
    Existential broadcast: one ``∃ property.f`` per filler, in order.

    Example:
        >>> some(r, [B, C])   # [∃ r B, ∃ r C]
    """
    return [Some(property, f) for f in _operands(fillers)]


def only(property: EntityRef, fillers: Sequence[Filler]) -> List[ClassExpression]:
    """Universal broadcast: one ``∀ property.f`` per filler, in order."""
    return [Only(property, f) for f in _operands(fillers)]


def _flatten(kind: type, fillers: Sequence[Filler]) -> Tuple[ClassExpression, ...]:
    flat: List[ClassExpression] = []
    for op in _operands(fillers):
        if isinstance(op, kind):
            flat.extend(op.operands)  # type: ignore[attr-defined]
        else:
            flat.append(op)
    return tuple(flat)


def union(operands: Sequence[Filler]) -> ClassExpression:
    """Order-preserving union; nested unions are spliced in and a single operand is returned as is."""
    flat = _flatten(UnionOf, operands)
    return flat[0] if len(flat) == 1 else UnionOf(flat)


def intersection(operands: Sequence[Filler]) -> ClassExpression:
    flat = _flatten(IntersectionOf, operands)
    return flat[0] if len(flat) == 1 else IntersectionOf(flat)


def some_only(property: EntityRef, fillers: Sequence[Filler]) -> List[ClassExpression]:
    """
    Covering pattern: ``some(property, fillers)`` followed by ``∀ property.(f1 ⊔ ... ⊔ fn)``.

    The result always has ``len(fillers) + 1`` expressions; with one filler the universal is
    over that filler alone.
    """
    return some(property, fillers) + [Only(property, union(fillers))]


# ---------------------- Frames ----------------------


@dataclass(frozen=True)
class Frame:
    """Description of a named class: superclasses, annotations and an optional label."""

    supers: Tuple[ClassExpression, ...] = ()
    annotations: Tuple[Tuple[AnnotationProperty, Union[str, bool]], ...] = ()
    label: Optional[str] = None

    @classmethod
    def of(
        cls,
        supers: Sequence[Filler] = (),
        annotations: Sequence[Tuple[AnnotationProperty, Union[str, bool]]] = (),
        label: Optional[str] = None,
    ) -> "Frame":
        return cls(tuple(_as_expression(s) for s in supers), tuple(annotations), label)

    def entities(self) -> List[EntityRef]:
        found: List[EntityRef] = []
        for s in self.supers:
            found.extend(expression_entities(s))
        return found


def frame_axioms(entity: EntityRef, frame: Frame) -> List[Axiom]:
    """The axioms a frame contributes once attached to ``entity``."""
    axioms: List[Axiom] = [Declaration(entity, EntitySort.CLASS)]
    axioms.extend(SubClassOf(entity, s) for s in frame.supers)
    if frame.label is not None:
        axioms.append(AnnotationAssertion(entity, AnnotationProperty.LABEL, frame.label))
    axioms.extend(AnnotationAssertion(entity, prop, value) for prop, value in frame.annotations)
    return axioms


def owl_class(
    name: str, frame: Frame, ontology: Ontology, env: "Environment", context: str = ""
) -> Tuple[EntityRef, Ontology]:
    """
    Declare a named class described by ``frame``.

    Every entity the frame mentions must already be declared in ``env``.

    Args:
        name: Class label
        frame: Superclasses and annotations
        ontology: Ontology to extend
        env: Build environment
        context: Use site reported in resolution errors

    Returns:
        Tuple of (new class entity, extended ontology)

    Example:
        >>> a, onto = owl_class("A", Frame.of(supers=some(r, [b])), onto, env)
    """
    if not name or not name.strip():
        raise ValueError("class name must be non-empty")
    for ref in frame.entities():
        env.require(ref, context or name)
    entity = env.declare(name, EntitySort.CLASS)
    return entity, add_axioms(ontology, frame_axioms(entity, frame))


def object_property(name: str, ontology: Ontology, env: "Environment") -> Tuple[EntityRef, Ontology]:
    """Declare an object property usable in ``some``/``only`` restrictions."""
    if not name or not name.strip():
        raise ValueError("property name must be non-empty")
    prop = env.declare(name, EntitySort.OBJECT_PROPERTY)
    return prop, add_axioms(ontology, [Declaration(prop, EntitySort.OBJECT_PROPERTY)])
