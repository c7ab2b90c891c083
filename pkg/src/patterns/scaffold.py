"""Scaffold patterns: each expands one source record into axioms under a top-level class."""
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple, Union

from src.errors import PatternError, SourceSpan
from src.owl.expr import Frame, frame_axioms, owl_class
from src.owl.model import AnnotationProperty, EntityRef, Ontology
from src.registry.environment import Environment

logger = logging.getLogger("ontoforge")

# ---------------------- Top Level ----------------------

DISEASE = "Disease"
GENE = "Gene"
HUMAN_ANATOMY = "HumanAnatomy"
MITOCHONDRIAL_ANATOMY = "MitochondrialAnatomy"
PROTEIN = "Protein"
PAPER = "Paper"
TERM = "Term"

# Scaffold parents, in report order
SCAFFOLD_PARENTS: Tuple[str, ...] = (DISEASE, GENE, HUMAN_ANATOMY, MITOCHONDRIAL_ANATOMY, PROTEIN)
# Layer built on top of the scaffold from per-paper term files
TERM_LAYER: Tuple[str, ...] = (PAPER, TERM)
TOP_LEVEL: Tuple[str, ...] = SCAFFOLD_PARENTS + TERM_LAYER

DISPLAY_NAMES: Dict[str, str] = {
    HUMAN_ANATOMY: "Human Anatomy",
    MITOCHONDRIAL_ANATOMY: "Mitochondrial Anatomy",
}

OMIM_PREFIX = "OMIMID:"
LONG_NAME_PREFIX = "Long name:"


def display_name(label: str) -> str:
    return DISPLAY_NAMES.get(label, label)


# ---------------------- Records ----------------------


@dataclass(frozen=True)
class DiseaseRecord:
    name: str
    omim: Optional[str] = None
    long_name: Optional[str] = None
    span: Optional[SourceSpan] = field(default=None, compare=False)

    def __post_init__(self):
        if not self.name or not self.name.strip():
            raise ValueError("disease name must be non-empty")


@dataclass(frozen=True)
class TermRecord:
    paper_id: str
    term: str
    span: Optional[SourceSpan] = field(default=None, compare=False)

    def __post_init__(self):
        if not self.paper_id or not self.paper_id.strip():
            raise ValueError("paper id must be non-empty")
        if not self.term or not self.term.strip():
            raise ValueError("term must be non-empty")


# ---------------------- Patterns ----------------------


def declare_top_level(ontology: Ontology, env: Environment) -> Ontology:
    """Declare the seven root classes; must run before any pattern instantiation."""
    for label in TOP_LEVEL:
        frame = Frame.of(label=label)
        env.claim(label, frame_axioms(env.entity(label), frame), "top level")
        _, ontology = owl_class(label, frame, ontology, env)
    return ontology


def subclass_pattern(
    name: str,
    parent: Union[str, EntityRef],
    ontology: Ontology,
    env: Environment,
    annotations: Sequence[Tuple[AnnotationProperty, str]] = (),
    context: str = "",
    span: Optional[SourceSpan] = None,
) -> Ontology:
    """
    Shared shape of every scaffold pattern: a labelled subclass of ``parent`` plus extra annotations.

    Re-instantiating with identical content is a no-op; a different definition under the same
    label is a collision.
    """
    name = (name or "").strip()
    if not name:
        raise PatternError("empty class name", span)
    if isinstance(parent, EntityRef):
        parent_ref = parent
    else:
        parent_ref = env.resolve(parent, context or name, span)
    frame = Frame.of(supers=[parent_ref], annotations=annotations, label=name)
    if not env.claim(name, frame_axioms(env.entity(name), frame), context or parent_ref.label, span):
        return ontology
    _, ontology = owl_class(name, frame, ontology, env, context=context or name)
    return ontology


def gene_class(name: str, ontology: Ontology, env: Environment, span: Optional[SourceSpan] = None) -> Ontology:
    return subclass_pattern(name, GENE, ontology, env, context="gene pattern", span=span)


def disease_class(record: DiseaseRecord, ontology: Ontology, env: Environment) -> Ontology:
    """
    Disease pattern.

    Adds a see-also ``OMIMID:<omim>`` when the OMIM id is present and a second label
    ``Long name:<long name>`` when the long name is present.
    """
    annotations: List[Tuple[AnnotationProperty, str]] = []
    if record.omim:
        annotations.append((AnnotationProperty.SEE_ALSO, OMIM_PREFIX + record.omim))
    if record.long_name:
        annotations.append((AnnotationProperty.LABEL, LONG_NAME_PREFIX + record.long_name))
    return subclass_pattern(
        record.name, DISEASE, ontology, env, annotations, context="disease pattern", span=record.span
    )


def named_subclass(
    name: str,
    parent: Union[str, EntityRef],
    ontology: Ontology,
    env: Environment,
    span: Optional[SourceSpan] = None,
) -> Ontology:
    """Gene-shaped class under any declared parent (anatomy, protein)."""
    parent_label = parent.label if isinstance(parent, EntityRef) else parent
    return subclass_pattern(name, parent, ontology, env, context=f"named pattern under {parent_label}", span=span)


def paper_class(paper_id: str, ontology: Ontology, env: Environment, span: Optional[SourceSpan] = None) -> Ontology:
    return subclass_pattern(paper_id, PAPER, ontology, env, context="paper pattern", span=span)


def term_class(record: TermRecord, ontology: Ontology, env: Environment) -> Ontology:
    """
    Term pattern: a subclass of Term whose see-also names the source paper.

    The paper must already be declared (or deprecated, which warns).
    """
    paper = env.resolve(record.paper_id, f"term {record.term}", record.span)
    return subclass_pattern(
        record.term,
        TERM,
        ontology,
        env,
        [(AnnotationProperty.SEE_ALSO, paper.label)],
        context="term pattern",
        span=record.span,
    )
