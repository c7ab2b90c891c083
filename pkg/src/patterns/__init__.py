"""Patterns module - Scaffold and term-layer patterns plus the instantiation table."""

from src.patterns.dispatch import (
    PATTERNS,
    PatternSpec,
    get_pattern,
    instantiate,
    register_pattern,
    registered_patterns,
    unregister_pattern,
)
from src.patterns.scaffold import (
    SCAFFOLD_PARENTS,
    TERM_LAYER,
    TOP_LEVEL,
    DiseaseRecord,
    TermRecord,
    declare_top_level,
    disease_class,
    display_name,
    gene_class,
    named_subclass,
    paper_class,
    subclass_pattern,
    term_class,
)

__all__ = [
    # Dispatch
    "PATTERNS",
    "PatternSpec",
    "get_pattern",
    "instantiate",
    "register_pattern",
    "registered_patterns",
    "unregister_pattern",
    # Scaffold
    "SCAFFOLD_PARENTS",
    "TERM_LAYER",
    "TOP_LEVEL",
    "DiseaseRecord",
    "TermRecord",
    "declare_top_level",
    "disease_class",
    "display_name",
    "gene_class",
    "named_subclass",
    "paper_class",
    "subclass_pattern",
    "term_class",
]
