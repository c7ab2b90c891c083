"""ontoforge - pattern-first ontology scaffolding from extant knowledge sources."""

__version__ = "1.0.0"
