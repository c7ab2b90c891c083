"""Ingest module - Source locators, flat-file readers and the build manifest."""

from src.ingest.manifest import BuildManifest, SourceSpec, load_manifest, load_manifest_file, parse_locator
from src.ingest.readers import (
    DISEASE_TABLE,
    FORMATS,
    NAME_LIST,
    PAPER_TERMS,
    read_disease_table,
    read_name_entries,
    read_name_list,
    read_paper_terms,
    render_name_list,
)
from src.ingest.sources import (
    Fetcher,
    Mode,
    Scheme,
    SourceLocator,
    http_fetch,
    resolve_all,
    resolve_source,
)

__all__ = [
    # Manifest
    "BuildManifest",
    "SourceSpec",
    "load_manifest",
    "load_manifest_file",
    "parse_locator",
    # Readers
    "DISEASE_TABLE",
    "FORMATS",
    "NAME_LIST",
    "PAPER_TERMS",
    "read_disease_table",
    "read_name_entries",
    "read_name_list",
    "read_paper_terms",
    "render_name_list",
    # Sources
    "Fetcher",
    "Mode",
    "Scheme",
    "SourceLocator",
    "http_fetch",
    "resolve_all",
    "resolve_source",
]
