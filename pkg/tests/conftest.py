"""Shared fixtures: a fresh build environment, the bundled MDO fixture tree and manifest writers."""
import json
import shutil
from pathlib import Path
from typing import Any, Dict, List

import pytest

from src.owl.model import EntityRef, Ontology
from src.patterns.dispatch import PATTERNS
from src.patterns.scaffold import declare_top_level
from src.registry.environment import Environment

ONTOLOGY_IRI = "http://example.org/mdo"
BASE = "http://example.org/mdo#"
FIXTURES = Path(__file__).resolve().parent.parent / "fixtures" / "mdo"

# Table 1 row counts of the bundled fixture
TABLE_1 = {"Disease": 41, "Gene": 761, "HumanAnatomy": 61, "MitochondrialAnatomy": 15, "Protein": 479}


def ref(label: str) -> EntityRef:
    return EntityRef(label, BASE + label.replace(" ", "_"))


@pytest.fixture
def env() -> Environment:
    return Environment(BASE)


@pytest.fixture
def onto(env: Environment) -> Ontology:
    """Empty ontology with the seven top-level classes already declared in ``env``."""
    return declare_top_level(Ontology.empty(ONTOLOGY_IRI, BASE), env)


@pytest.fixture
def mdo_dir(tmp_path: Path) -> Path:
    """Writable copy of the bundled fixture tree."""
    target = tmp_path / "mdo"
    shutil.copytree(FIXTURES, target)
    return target


@pytest.fixture(autouse=True)
def restore_patterns():
    saved = dict(PATTERNS)
    yield
    PATTERNS.clear()
    PATTERNS.update(saved)


def write_manifest(directory: Path, sources: List[Dict[str, Any]], name: str = "manifest.json", **extra: Any) -> Path:
    doc: Dict[str, Any] = {"ontology_iri": ONTOLOGY_IRI, "base_prefix": BASE, "sources": sources}
    doc.update(extra)
    path = directory / name
    path.write_text(json.dumps(doc, indent=2), encoding="utf-8")
    return path


def write_lines(path: Path, lines: List[str]) -> Path:
    path.write_text("".join(f"{line}\n" for line in lines), encoding="utf-8")
    return path


def data_lines(path: Path) -> List[str]:
    return [ln for ln in path.read_text(encoding="utf-8").splitlines() if ln.strip() and not ln.startswith("#")]


def term_files(directory: Path) -> List[Path]:
    """The per-paper term files of a fixture tree, one per paper."""
    return sorted((directory / "terms").glob("*.tsv"))
