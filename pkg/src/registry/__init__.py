"""Registry module - Declare-before-use resolution, deprecations and identifier minting."""

from src.registry.environment import (
    BuildWarning,
    Deprecation,
    Environment,
    WarningKind,
    apply_deprecations,
    load_deprecations,
    resolve,
)
from src.registry.ids import (
    IdRegistry,
    format_id,
    iri_for,
    load_registry,
    mint_id,
    registry_lock,
    sanitize_label,
    save_registry,
)

__all__ = [
    # Environment
    "BuildWarning",
    "Deprecation",
    "Environment",
    "WarningKind",
    "apply_deprecations",
    "load_deprecations",
    "resolve",
    # Identifiers
    "IdRegistry",
    "format_id",
    "iri_for",
    "load_registry",
    "mint_id",
    "registry_lock",
    "sanitize_label",
    "save_registry",
]
