"""Build pipeline: manifest -> sources -> records -> patterns -> ontology."""
import logging
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

from src.errors import ManifestError, OntoforgeError, ResolutionError, SourceError, SourceSpan
from src.ingest.manifest import BuildManifest, SourceSpec
from src.ingest.readers import DISEASE_TABLE, NAME_LIST, PAPER_TERMS, read_disease_table, read_name_entries, read_paper_terms
from src.ingest.sources import Fetcher, Mode, SourceLocator, http_fetch, resolve_all
from src.owl.model import Ontology, undeclared_references
from src.patterns.dispatch import get_pattern, instantiate
from src.patterns.scaffold import TOP_LEVEL, declare_top_level
from src.registry.environment import BuildWarning, Deprecation, Environment, apply_deprecations, load_deprecations
from src.registry.ids import IdRegistry, load_registry, render_registry
from src.serialize.functional import serialize_functional
from src.serialize.report import BuildReport, stats

logger = logging.getLogger("ontoforge")

Record = Tuple[Dict[str, Any], SourceSpan]


@dataclass
class BuildOptions:
    """
    Knobs of one pipeline run.

    Attributes:
        check_only: Collect every resolution error instead of stopping at the first
        ids_path: Identifier registry, overriding the manifest's ``id_registry``
        mode_override: Force release or live for network sources
        fetch: HTTP fetcher for live sources
    """

    check_only: bool = False
    ids_path: Optional[Path] = None
    mode_override: Optional[Mode] = None
    fetch: Fetcher = http_fetch


@dataclass
class BuildResult:
    manifest: BuildManifest
    env: Environment
    ontology: Optional[Ontology] = None
    report: Optional[BuildReport] = None
    registry: Optional[IdRegistry] = None
    registry_path: Optional[Path] = None
    errors: List[OntoforgeError] = field(default_factory=list)

    @property
    def warnings(self) -> List[BuildWarning]:
        return self.env.warnings

    @property
    def ok(self) -> bool:
        return not self.errors


def registry_path_for(manifest: BuildManifest, options: BuildOptions) -> Optional[Path]:
    return options.ids_path or manifest.id_registry


def _apply_override(locator: SourceLocator, mode: Optional[Mode]) -> SourceLocator:
    try:
        return locator.with_mode(mode)
    except ValueError as e:
        raise ManifestError(f"{locator.name}: {e}") from None


def _records(source: SourceSpec, data: bytes) -> List[Record]:
    """Parse a source and turn each row into pattern bindings."""
    origin = source.locator.name
    wants_parent = "parent" in get_pattern(source.pattern).parameters
    if source.format == NAME_LIST:
        records: List[Record] = []
        for name, span in read_name_entries(data, origin):
            bindings: Dict[str, Any] = {"name": name}
            if wants_parent:
                bindings["parent"] = source.parent
            records.append((bindings, span))
        return records
    if source.format == DISEASE_TABLE:
        return [
            ({"name": r.name, "omim": r.omim, "long_name": r.long_name}, r.span or SourceSpan(origin))
            for r in read_disease_table(data, origin)
        ]
    if source.format == PAPER_TERMS:
        return [({"paper_id": r.paper_id, "term": r.term}, r.span or SourceSpan(origin)) for r in read_paper_terms(data, origin)]
    raise ManifestError(f"unknown format: {source.format}", SourceSpan(origin))


def _declared_labels(parsed: List[List[Record]], deprecations: Dict[str, Deprecation]) -> List[str]:
    labels = list(TOP_LEVEL)
    for records in parsed:
        for bindings, _ in records:
            label = bindings.get("name") or bindings.get("term")
            if label:
                labels.append(label)
    labels.extend(deprecations)
    return labels


def run_build(manifest: BuildManifest, options: Optional[BuildOptions] = None) -> BuildResult:
    """
    Run the full pipeline in memory.

    Steps: resolve and read every source (concurrently), declare the top level, expand patterns in
    manifest order, apply deprecations, then verify the signature is closed. Nothing is written.

    Args:
        manifest: Validated manifest
        options: Build options

    Returns:
        BuildResult; in check-only mode ``errors`` lists every failure found

    Raises:
        OntoforgeError: the first failure, unless ``options.check_only``
    """
    opts = options or BuildOptions()
    started = time.perf_counter()
    collected: List[OntoforgeError] = []

    def fail(error: OntoforgeError):
        if not opts.check_only:
            raise error
        collected.append(error)

    locators = [_apply_override(s.locator, opts.mode_override) for s in manifest.sources]
    if manifest.deprecations is not None:
        locators.append(_apply_override(manifest.deprecations, opts.mode_override))
    blobs = resolve_all(locators, opts.fetch, return_exceptions=opts.check_only)

    parsed: List[List[Record]] = []
    for source, blob in zip(manifest.sources, blobs):
        records: List[Record] = []
        if isinstance(blob, SourceError):
            fail(blob)
        else:
            try:
                records = _records(source, blob)
            except OntoforgeError as e:
                fail(e)
        logger.info(f"{source.locator.name}: {len(records)} records for pattern {source.pattern}")
        parsed.append(records)

    deprecations: Dict[str, Deprecation] = {}
    if manifest.deprecations is not None:
        blob = blobs[-1]
        if isinstance(blob, SourceError):
            fail(blob)
        else:
            try:
                deprecations = load_deprecations(blob, manifest.deprecations.name)
            except OntoforgeError as e:
                fail(e)

    registry_path = registry_path_for(manifest, opts)
    registry: Optional[IdRegistry] = None
    if registry_path is not None:
        registry = load_registry(registry_path)
        fresh = registry.mint_all(_declared_labels(parsed, deprecations))
        logger.info(f"Minted {len(fresh)} new identifiers ({len(registry)} total)")

    env = Environment(manifest.base_prefix, registry, deprecations, collect_errors=opts.check_only)
    ontology = declare_top_level(Ontology.empty(manifest.ontology_iri, manifest.base_prefix), env)

    for source, records in zip(manifest.sources, parsed):
        for bindings, span in records:
            try:
                ontology = instantiate(source.pattern, bindings, ontology, env, span)
            except OntoforgeError as e:
                fail(e)

    ontology = apply_deprecations(ontology, env)
    collected.extend(env.errors)
    if not collected:
        for ref in sorted(undeclared_references(ontology), key=lambda r: r.label):
            fail(ResolutionError(ref.label, context="closed-signature check"))
    if opts.check_only and not collected:
        # the same rendering build performs, without writing
        try:
            serialize_functional(ontology)
            if registry is not None:
                render_registry(registry)
        except OntoforgeError as e:
            fail(e)

    sources: Dict[str, List[str]] = {}
    for source in manifest.sources:
        sources.setdefault(source.parent, []).append(source.locator.name)
    report = stats(ontology, env.warnings, sources)

    elapsed = time.perf_counter() - started
    logger.info(
        f"Built {manifest.ontology_iri}: {len(ontology)} axioms, {len(collected)} errors, "
        f"{len(env.warnings)} warnings in {elapsed:.2f}s"
    )
    return BuildResult(
        manifest=manifest,
        env=env,
        ontology=ontology,
        report=report,
        registry=registry,
        registry_path=registry_path,
        errors=collected,
    )
