"""In-memory model of the OWL 2 subset the scaffold emits."""
import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, FrozenSet, Iterable, Iterator, Mapping, Optional, Set, Tuple, Union

from src.config import Config

_IRI_RE = re.compile(r"^[A-Za-z][A-Za-z0-9+.\-]*:\S+$")


@dataclass(frozen=True)
class EntityRef:
    """
    A named entity: a class or an object property.

    Equality and hashing use the IRI only; within one build labels and IRIs are in bijection,
    and the label is carried for display and reporting.
    """

    label: str = field(compare=False)
    iri: str

    def __post_init__(self):
        if not self.label or not self.label.strip():
            raise ValueError("entity label must be non-empty")
        if not _IRI_RE.match(self.iri):
            raise ValueError(f"not an absolute IRI: {self.iri!r}")


class EntitySort(Enum):
    CLASS = "Class"
    OBJECT_PROPERTY = "ObjectProperty"
    ANNOTATION_PROPERTY = "AnnotationProperty"


class AnnotationProperty(Enum):
    """The fixed annotation vocabulary; values are the full IRIs."""

    LABEL = Config.RDFS + "label"
    SEE_ALSO = Config.RDFS + "seeAlso"
    COMMENT = Config.RDFS + "comment"
    DEPRECATED = Config.OWL + "deprecated"


# ---------------------- Class Expressions ----------------------


@dataclass(frozen=True)
class Named:
    entity: EntityRef


@dataclass(frozen=True)
class Some:
    """Existential restriction: ∃ property.filler"""

    property: EntityRef
    filler: "ClassExpression"


@dataclass(frozen=True)
class Only:
    """Universal restriction: ∀ property.filler"""

    property: EntityRef
    filler: "ClassExpression"


@dataclass(frozen=True)
class UnionOf:
    operands: Tuple["ClassExpression", ...]

    def __post_init__(self):
        if len(self.operands) < 2:
            raise ValueError("UnionOf needs at least two operands; use expr.union() to normalize")


@dataclass(frozen=True)
class IntersectionOf:
    operands: Tuple["ClassExpression", ...]

    def __post_init__(self):
        if len(self.operands) < 2:
            raise ValueError("IntersectionOf needs at least two operands; use expr.intersection() to normalize")


ClassExpression = Union[Named, Some, Only, UnionOf, IntersectionOf]


def expression_entities(expr: ClassExpression) -> Iterator[EntityRef]:
    """Yield every entity in an expression tree: named leaves and restriction properties."""
    if isinstance(expr, Named):
        yield expr.entity
    elif isinstance(expr, (Some, Only)):
        yield expr.property
        yield from expression_entities(expr.filler)
    else:
        for op in expr.operands:
            yield from expression_entities(op)


# ---------------------- Axioms ----------------------


@dataclass(frozen=True)
class Declaration:
    entity: EntityRef
    sort: EntitySort = EntitySort.CLASS


@dataclass(frozen=True)
class SubClassOf:
    sub: EntityRef
    sup: ClassExpression


@dataclass(frozen=True)
class AnnotationAssertion:
    subject: EntityRef
    property: AnnotationProperty
    value: Union[str, bool]

    def __post_init__(self):
        if self.property is AnnotationProperty.DEPRECATED and self.value is not True:
            raise ValueError("deprecated annotations carry the boolean value true")
        if self.property is not AnnotationProperty.DEPRECATED and not isinstance(self.value, str):
            raise ValueError(f"{self.property.name} annotations carry string values")


Axiom = Union[Declaration, SubClassOf, AnnotationAssertion]

# Serialization order of axiom kinds
AXIOM_KIND_RANK: Dict[type, int] = {Declaration: 0, SubClassOf: 1, AnnotationAssertion: 2}


def axiom_entities(axiom: Axiom) -> Iterator[EntityRef]:
    if isinstance(axiom, Declaration):
        yield axiom.entity
    elif isinstance(axiom, SubClassOf):
        yield axiom.sub
        yield from expression_entities(axiom.sup)
    else:
        yield axiom.subject


# ---------------------- Ontology ----------------------


def default_prefixes(base_prefix: str) -> Dict[str, str]:
    """Prefix table every emitted document declares: base, owl, rdfs and xsd."""
    return {"": base_prefix, "owl": Config.OWL, "rdfs": Config.RDFS, "xsd": Config.XSD}


@dataclass(frozen=True, eq=False)
class Ontology:
    """
    Immutable ontology value.

    Axioms keep insertion order in ``axioms`` but equality is set equality; serialization
    imposes its own total order.
    """

    iri: str
    axioms: Tuple[Axiom, ...] = ()
    prefixes: Mapping[str, str] = field(default_factory=dict)
    _index: FrozenSet[Axiom] = field(default=frozenset(), repr=False)

    def __post_init__(self):
        if len(self._index) != len(self.axioms):
            unique = tuple(dict.fromkeys(self.axioms))
            object.__setattr__(self, "axioms", unique)
            object.__setattr__(self, "_index", frozenset(unique))

    @classmethod
    def empty(cls, iri: str, base_prefix: Optional[str] = None) -> "Ontology":
        return cls(iri=iri, prefixes=default_prefixes(base_prefix or iri + "#"))

    @property
    def axiom_set(self) -> FrozenSet[Axiom]:
        return self._index

    def __contains__(self, axiom: object) -> bool:
        return axiom in self._index

    def __len__(self) -> int:
        return len(self.axioms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Ontology):
            return NotImplemented
        return self.iri == other.iri and dict(self.prefixes) == dict(other.prefixes) and self._index == other._index

    def __hash__(self) -> int:
        return hash((self.iri, self._index))


def add_axioms(ontology: Ontology, axioms: Iterable[Axiom]) -> Ontology:
    """
    Return a new ontology holding the prior axioms plus ``axioms``; duplicates collapse.

    Example:
        >>> o = add_axioms(Ontology.empty("http://example.org/mdo"), [Declaration(gene)])
        >>> len(o)
        1
    """
    seen = set(ontology.axiom_set)
    fresh = []
    for ax in axioms:
        if ax not in seen:
            seen.add(ax)
            fresh.append(ax)
    if not fresh:
        return ontology
    return Ontology(
        iri=ontology.iri,
        axioms=ontology.axioms + tuple(fresh),
        prefixes=ontology.prefixes,
        _index=frozenset(seen),
    )


def signature(ontology: Ontology) -> Set[EntityRef]:
    """Every entity mentioned anywhere in the ontology's axioms."""
    found: Set[EntityRef] = set()
    for ax in ontology.axioms:
        found.update(axiom_entities(ax))
    return found


def declared_entities(ontology: Ontology) -> Set[EntityRef]:
    return {ax.entity for ax in ontology.axioms if isinstance(ax, Declaration)}


def undeclared_references(ontology: Ontology) -> Set[EntityRef]:
    """Entities used without a Declaration; empty for every ontology the build accepts."""
    return signature(ontology) - declared_entities(ontology)
