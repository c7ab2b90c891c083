"""Declare-before-use resolution, deprecation handling and build warnings."""
import logging
from dataclasses import dataclass
from enum import Enum
from typing import Dict, FrozenSet, Iterable, List, Optional, Set, Tuple

from src.errors import IngestError, LabelCollisionError, OntoforgeError, RegistryError, ResolutionError, SourceSpan
from src.owl.model import (
    AnnotationAssertion,
    AnnotationProperty,
    Axiom,
    Declaration,
    EntityRef,
    EntitySort,
    Ontology,
    add_axioms,
)
from src.registry.ids import IdRegistry, iri_for
from src.utils import decode_utf8, plain_text, split_lines

logger = logging.getLogger("ontoforge")


class WarningKind(Enum):
    DEPRECATED_REFERENCE = "deprecated-reference"
    OTHER = "other"


@dataclass(frozen=True)
class BuildWarning:
    kind: WarningKind
    label: str
    context: str = ""

    def __str__(self) -> str:
        where = f"{self.context}: " if self.context else ""
        if self.kind is WarningKind.DEPRECATED_REFERENCE:
            return f"{where}warning: reference to deprecated entity {self.label}"
        return f"{where}warning: {self.label}"


@dataclass(frozen=True)
class Deprecation:
    label: str
    replacement: Optional[str] = None
    span: Optional[SourceSpan] = None


class Environment:
    """
    Symbol table of one build.

    Maps labels to entities, remembers deprecations, and accumulates warnings. In check-only
    mode (``collect_errors=True``) failures are appended to ``errors`` instead of raised so a
    single run can report all of them.
    """

    def __init__(
        self,
        base_prefix: str,
        id_registry: Optional[IdRegistry] = None,
        deprecations: Optional[Dict[str, Deprecation]] = None,
        collect_errors: bool = False,
    ):
        self.base_prefix = base_prefix
        self.id_registry = id_registry
        self.deprecated: Dict[str, Deprecation] = dict(deprecations or {})
        self.collect_errors = collect_errors
        self.declared: Dict[str, EntityRef] = {}
        self.sorts: Dict[str, EntitySort] = {}
        self.warnings: List[BuildWarning] = []
        self.errors: List[OntoforgeError] = []
        self._entities: Dict[str, EntityRef] = {}
        self._iri_owner: Dict[str, str] = {}
        self._claims: Dict[str, Tuple[FrozenSet[Axiom], str]] = {}
        # labels resolve() already reported as undeclared
        self._unresolved: Set[str] = set()

    # ---------------------- Failure policy ----------------------

    def fail(self, error: OntoforgeError):
        """Raise ``error``, or record it when collecting."""
        if not self.collect_errors:
            raise error
        logger.debug(f"collected: {error}")
        self.errors.append(error)

    # ---------------------- Entities ----------------------

    def entity(self, label: str) -> EntityRef:
        """The entity for ``label`` in this build (not necessarily declared yet)."""
        label = label.strip()
        cached = self._entities.get(label)
        if cached is not None:
            return cached
        iri = iri_for(label, self.id_registry, self.base_prefix)
        owner = self._iri_owner.get(iri)
        if owner is not None and owner != label:
            self.fail(LabelCollisionError(f"labels {owner!r} and {label!r} map to the same IRI {iri}"))
        self._iri_owner.setdefault(iri, label)
        ref = EntityRef(label=label, iri=iri)
        self._entities[label] = ref
        return ref

    def declare(self, label: str, sort: EntitySort = EntitySort.CLASS) -> EntityRef:
        ref = self.entity(label)
        self.declared[ref.label] = ref
        self.sorts.setdefault(ref.label, sort)
        return ref

    def is_declared(self, label: str) -> bool:
        return label.strip() in self.declared

    def require(self, ref: EntityRef, context: str = "", span: Optional[SourceSpan] = None):
        """Fail unless ``ref`` was declared."""
        if ref.label in self._unresolved:
            return
        if self.declared.get(ref.label) != ref:
            self.fail(ResolutionError(ref.label, span, context))

    def claim(self, label: str, axioms: Iterable[Axiom], context: str, span: Optional[SourceSpan] = None) -> bool:
        """
        Register the axioms that define ``label``.

        Returns:
            True for a first definition, False for an identical re-instantiation

        Raises:
            LabelCollisionError: if a different definition already owns the label
        """
        defined = frozenset(axioms)
        prior = self._claims.get(label)
        if prior is None:
            self._claims[label] = (defined, context)
            return True
        if prior[0] == defined:
            return False
        self.fail(LabelCollisionError(f"label collision: {label!r} is already defined by {prior[1]}", span))
        return False

    # ---------------------- Resolution ----------------------

    def resolve(self, label: str, context: str = "", span: Optional[SourceSpan] = None) -> EntityRef:
        """
        Resolve a reference by label.

        Deprecated labels resolve to their replacement (or to themselves when there is none) and
        add exactly one warning; undeclared labels fail.
        """
        label = label.strip()
        if label not in self.deprecated:
            if label in self.declared:
                return self.declared[label]
            self._unresolved.add(label)
            self.fail(ResolutionError(label, span, context))
            return self.entity(label)

        where = str(span) if span is not None else context
        self.warnings.append(BuildWarning(WarningKind.DEPRECATED_REFERENCE, label, where))
        logger.info(f"{where + ': ' if where else ''}reference to deprecated entity {label}")

        seen = {label}
        current = self.deprecated[label]
        while current.replacement:
            target = current.replacement
            if target in seen:
                self.fail(RegistryError(f"deprecation cycle through {target!r}", current.span))
                return self.declare(label)
            seen.add(target)
            nxt = self.deprecated.get(target)
            if nxt is None:
                if target in self.declared:
                    return self.declared[target]
                self._unresolved.add(target)
                self.fail(ResolutionError(target, span, f"replacement of deprecated {label}"))
                return self.entity(target)
            current = nxt
        return self.declare(current.label)


def resolve(
    label: str, env: Environment, context: str = "", span: Optional[SourceSpan] = None
) -> Tuple[EntityRef, Environment]:
    """
    Declare-before-use lookup of ``label``.

    Returns:
        Tuple of (entity, environment); the environment is the same object, with a warning
        appended when the label is deprecated

    Raises:
        ResolutionError: undeclared label, unless the environment collects errors
    """
    return env.resolve(label, context, span), env


def load_deprecations(data: bytes, origin: str = "<deprecations>") -> Dict[str, Deprecation]:
    """
    Parse a deprecation table: ``old_label<TAB>replacement_label`` per line, replacement optional.

    Blank lines and ``#`` comments are skipped.

    Example:
        >>> load_deprecations(b"T9\\tT10\\n")["T9"].replacement
        'T10'
    """
    table: Dict[str, Deprecation] = {}
    for lineno, raw in enumerate(split_lines(decode_utf8(data, origin)), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        span = SourceSpan(origin, lineno)
        parts = [p.strip() for p in raw.split("\t")]
        if len(parts) > 2:
            raise IngestError(f"expected old_label<TAB>replacement, got {len(parts)} columns", span)
        parts = [plain_text(p, span, "deprecated label") for p in parts]
        old = parts[0]
        replacement = parts[1] if len(parts) == 2 and parts[1] else None
        if not old:
            raise IngestError("empty deprecated label", span)
        if replacement == old:
            raise IngestError(f"{old!r} cannot replace itself", span)
        if old in table:
            first = table[old].span
            raise IngestError(f"duplicate deprecation of {old!r} (first on line {first.line if first else '?'})", span)
        table[old] = Deprecation(old, replacement, span)
    logger.info(f"Loaded {len(table)} deprecations from {origin}")
    return table


def apply_deprecations(ontology: Ontology, env: Environment) -> Ontology:
    """
    Keep deprecated labels in the signature: each gets a declaration, its label and
    ``owl:deprecated true``.
    """
    axioms: List[Axiom] = []
    for label in sorted(env.deprecated):
        ref = env.declare(label)
        axioms.append(Declaration(ref, env.sorts.get(label, EntitySort.CLASS)))
        axioms.append(AnnotationAssertion(ref, AnnotationProperty.LABEL, label))
        axioms.append(AnnotationAssertion(ref, AnnotationProperty.DEPRECATED, True))
    return add_axioms(ontology, axioms)
