"""Exception hierarchy and source coordinates for diagnostics."""
from dataclasses import dataclass
from typing import Optional


@dataclass(frozen=True)
class SourceSpan:
    """
    Location of a diagnostic: a file path, URL or locator name plus an optional line/column.

    Example:
        >>> str(SourceSpan("genes.txt", 12))
        'genes.txt:12'
    """

    origin: str
    line: Optional[int] = None
    column: Optional[int] = None

    def __str__(self) -> str:
        parts = [self.origin]
        if self.line is not None:
            parts.append(str(self.line))
            if self.column is not None:
                parts.append(str(self.column))
        return ":".join(parts)


class OntoforgeError(Exception):
    """Base class of every build failure. Renders as ``origin:line: message`` when located."""

    def __init__(self, message: str, span: Optional[SourceSpan] = None):
        super().__init__(message)
        self.message = message
        self.span = span

    def __str__(self) -> str:
        if self.span is None:
            return self.message
        return f"{self.span}: {self.message}"


class IngestError(OntoforgeError):
    """Malformed knowledge-source content."""


class ManifestError(OntoforgeError):
    """Invalid build manifest."""


class SourceError(OntoforgeError):
    """A source locator could not be resolved to bytes."""


class ResolutionError(OntoforgeError):
    """Reference to a label that was never declared."""

    def __init__(self, label: str, span: Optional[SourceSpan] = None, context: str = ""):
        where = f" (used by {context})" if context else ""
        super().__init__(f"undeclared entity: {label}{where}", span)
        self.label = label
        self.context = context


class LabelCollisionError(OntoforgeError):
    """Two different definitions claim the same label (or the same IRI)."""


class PatternError(OntoforgeError):
    """Unknown pattern or missing binding."""


class RegistryError(OntoforgeError):
    """Identifier registry regression, malformed registry file, or lock contention."""


class SerializationError(OntoforgeError):
    """Open signature on output, or input that is not this tool's canonical output."""
