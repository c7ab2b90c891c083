"""Build manifest: the declarative list of sources, their formats and the patterns they feed."""
import json
import logging
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

from src.errors import ManifestError, PatternError, SourceSpan
from src.ingest.readers import FORMATS, NAME_LIST
from src.ingest.sources import Mode, Scheme, SourceLocator
from src.patterns.dispatch import get_pattern
from src.patterns.scaffold import TOP_LEVEL
from src.utils import decode_utf8

logger = logging.getLogger("ontoforge")

_IRI_RE = re.compile(r"^[A-Za-z][A-Za-z0-9+.\-]*:\S+$")

_TOP_KEYS = {"ontology_iri", "base_prefix", "sources", "deprecations", "id_registry"}
_SOURCE_KEYS = {"locator", "mode", "format", "pattern", "parent", "inline", "release_copy"}
_LOCATOR_KEYS = {"locator", "mode", "release_copy"}


@dataclass(frozen=True)
class SourceSpec:
    """One manifest source: where to read, how to parse, which pattern to feed, under which parent."""

    locator: SourceLocator
    format: str
    pattern: str
    parent: str


@dataclass(frozen=True)
class BuildManifest:
    ontology_iri: str
    base_prefix: str
    sources: Tuple[SourceSpec, ...] = ()
    deprecations: Optional[SourceLocator] = None
    id_registry: Optional[Path] = None
    origin: str = "<manifest>"


def _reject_duplicates(pairs: List[Tuple[str, Any]]) -> Dict[str, Any]:
    out: Dict[str, Any] = {}
    for k, v in pairs:
        if k in out:
            raise ValueError(f"duplicate key {k!r}")
        out[k] = v
    return out


def _check_restricted(value: Any, path: str, span: SourceSpan):
    """Only objects, arrays and strings are allowed."""
    if isinstance(value, dict):
        for k, v in value.items():
            _check_restricted(v, f"{path}.{k}" if path else k, span)
    elif isinstance(value, list):
        for i, v in enumerate(value):
            _check_restricted(v, f"{path}[{i}]", span)
    elif not isinstance(value, str):
        raise ManifestError(f"{path}: only strings, arrays and objects are allowed, got {json.dumps(value)}", span)


def _string(obj: Dict[str, Any], key: str, path: str, span: SourceSpan, required: bool = True) -> Optional[str]:
    value = obj.get(key)
    if value is None:
        if required:
            raise ManifestError(f"{path}: missing required key '{key}'", span)
        return None
    if not isinstance(value, str) or not value.strip():
        raise ManifestError(f"{path}.{key}: expected a non-empty string", span)
    return value.strip()


def _path(target: str, base_dir: Optional[Path]) -> str:
    p = Path(target)
    if not p.is_absolute() and base_dir is not None:
        p = base_dir / p
    return str(p)


def parse_locator(
    text: Optional[str],
    mode: Optional[str],
    base_dir: Optional[Path],
    inline: Optional[List[str]] = None,
    release_copy: Optional[str] = None,
) -> SourceLocator:
    """
    Build a locator from manifest fields.

    ``http://`` and ``https://`` select the network schemes, ``inline`` (or an ``inline`` array with no
    locator) the embedded names, and anything else, optionally prefixed ``file:``, a path relative
    to the manifest's directory.

    Raises:
        ValueError: on an invalid combination
    """
    try:
        m = Mode(mode or Mode.RELEASE.value)
    except ValueError:
        raise ValueError(f"unknown mode: {mode} (expected release or live)") from None
    copy = _path(release_copy, base_dir) if release_copy else None
    if inline is not None:
        if text not in (None, "inline", "inline:"):
            raise ValueError("a source cannot have both a locator and an inline array")
        return SourceLocator(Scheme.INLINE, tuple(n.strip() for n in inline), m)
    if not text:
        raise ValueError("missing required key 'locator'")
    if text in ("inline", "inline:"):
        raise ValueError("inline locator without an inline array")
    lowered = text.lower()
    if lowered.startswith("https://"):
        return SourceLocator(Scheme.HTTPS, text, m, copy)
    if lowered.startswith("http://"):
        return SourceLocator(Scheme.HTTP, text, m, copy)
    if lowered.startswith("file://"):
        text = text[len("file://"):]
    elif lowered.startswith("file:"):
        text = text[len("file:"):]
    return SourceLocator(Scheme.FILE, _path(text, base_dir), m, copy)


def _source(raw: Any, index: int, base_dir: Optional[Path], span: SourceSpan) -> SourceSpec:
    path = f"sources[{index}]"
    if not isinstance(raw, dict):
        raise ManifestError(f"{path}: expected an object", span)
    unknown = sorted(set(raw) - _SOURCE_KEYS)
    if unknown:
        raise ManifestError(f"{path}: unknown key(s) {', '.join(unknown)}", span)

    fmt = _string(raw, "format", path, span)
    if fmt not in FORMATS:
        raise ManifestError(f"{path}.format: unknown format: {fmt} (expected {', '.join(FORMATS)})", span)
    pattern_name = _string(raw, "pattern", path, span)
    try:
        pattern = get_pattern(pattern_name)
    except PatternError:
        raise ManifestError(f"{path}.pattern: unknown pattern: {pattern_name}", span) from None
    if fmt not in pattern.formats:
        raise ManifestError(f"{path}: pattern {pattern_name} cannot consume format {fmt}", span)

    parent = _string(raw, "parent", path, span, required=pattern.parent is None)
    if parent is not None and parent not in TOP_LEVEL:
        raise ManifestError(f"{path}.parent: unknown parent: {parent} (expected one of {', '.join(TOP_LEVEL)})", span)
    if pattern.parent is not None and parent not in (None, pattern.parent):
        raise ManifestError(f"{path}.parent: pattern {pattern_name} always builds under {pattern.parent}", span)

    inline = raw.get("inline")
    if inline is not None:
        if not isinstance(inline, list) or not all(isinstance(n, str) and n.strip() for n in inline):
            raise ManifestError(f"{path}.inline: expected an array of non-empty strings", span)
        if fmt != NAME_LIST:
            raise ManifestError(f"{path}.inline: inline arrays are only allowed for {NAME_LIST} sources", span)
    try:
        locator = parse_locator(
            _string(raw, "locator", path, span, required=False),
            _string(raw, "mode", path, span, required=False),
            base_dir,
            inline,
            _string(raw, "release_copy", path, span, required=False),
        )
    except ValueError as e:
        raise ManifestError(f"{path}: {e}", span) from None
    return SourceSpec(locator, fmt, pattern_name, parent or pattern.parent)  # type: ignore[arg-type]


def _deprecations(raw: Any, base_dir: Optional[Path], span: SourceSpan) -> SourceLocator:
    if isinstance(raw, str):
        raw = {"locator": raw}
    if not isinstance(raw, dict):
        raise ManifestError("deprecations: expected a locator string or object", span)
    unknown = sorted(set(raw) - _LOCATOR_KEYS)
    if unknown:
        raise ManifestError(f"deprecations: unknown key(s) {', '.join(unknown)}", span)
    try:
        return parse_locator(
            _string(raw, "locator", "deprecations", span),
            _string(raw, "mode", "deprecations", span, required=False),
            base_dir,
            release_copy=_string(raw, "release_copy", "deprecations", span, required=False),
        )
    except ValueError as e:
        raise ManifestError(f"deprecations: {e}", span) from None


def load_manifest(data: bytes, origin: str = "<manifest>", base_dir: Optional[Path] = None) -> BuildManifest:
    """
    Parse and validate a manifest document.

    Args:
        data: Manifest bytes (restricted JSON: objects, arrays and strings)
        origin: Name used in diagnostics
        base_dir: Directory relative paths are resolved against

    Returns:
        Validated BuildManifest

    Raises:
        ManifestError: syntax error (with line/column), missing or unknown key, unknown pattern,
            format or parent, or an invalid locator/mode combination
    """
    text = decode_utf8(data, origin)
    try:
        doc = json.loads(text, object_pairs_hook=_reject_duplicates)
    except json.JSONDecodeError as e:
        raise ManifestError(f"syntax error: {e.msg}", SourceSpan(origin, e.lineno, e.colno)) from e
    except ValueError as e:
        raise ManifestError(f"syntax error: {e}", SourceSpan(origin)) from e

    span = SourceSpan(origin)
    if not isinstance(doc, dict):
        raise ManifestError("top level must be an object", span)
    _check_restricted(doc, "", span)
    unknown = sorted(set(doc) - _TOP_KEYS)
    if unknown:
        raise ManifestError(f"unknown key(s) {', '.join(unknown)}", span)

    ontology_iri = _string(doc, "ontology_iri", "manifest", span)
    base_prefix = _string(doc, "base_prefix", "manifest", span)
    for key, value in (("ontology_iri", ontology_iri), ("base_prefix", base_prefix)):
        if not _IRI_RE.match(value or ""):
            raise ManifestError(f"{key}: not an absolute IRI: {value}", span)

    raw_sources = doc.get("sources")
    if not isinstance(raw_sources, list):
        raise ManifestError("manifest: missing required key 'sources' (an array)", span)
    sources = tuple(_source(raw, i, base_dir, span) for i, raw in enumerate(raw_sources))

    deprecations = _deprecations(doc["deprecations"], base_dir, span) if "deprecations" in doc else None
    registry = _string(doc, "id_registry", "manifest", span, required=False)

    manifest = BuildManifest(
        ontology_iri=ontology_iri,  # type: ignore[arg-type]
        base_prefix=base_prefix,  # type: ignore[arg-type]
        sources=sources,
        deprecations=deprecations,
        id_registry=Path(_path(registry, base_dir)) if registry else None,
        origin=origin,
    )
    logger.info(f"Loaded manifest {origin}: {len(sources)} sources")
    return manifest


def load_manifest_file(path: Union[str, Path]) -> BuildManifest:
    """Read a manifest from disk; relative locators resolve against its directory."""
    p = Path(path)
    try:
        data = p.read_bytes()
    except OSError as e:
        raise ManifestError(f"cannot read manifest: {e.strerror}", SourceSpan(str(p))) from e
    return load_manifest(data, str(p), p.parent)
