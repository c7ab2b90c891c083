import json

import pytest
import requests

from src.errors import IngestError, ManifestError, SourceError
from src.ingest.manifest import load_manifest, load_manifest_file
from src.ingest.readers import read_disease_table, read_name_entries, read_name_list, read_paper_terms, render_name_list
from src.ingest.sources import Mode, Scheme, SourceLocator, http_fetch, resolve_all, resolve_source
from src.patterns.scaffold import DiseaseRecord
from tests.conftest import BASE, FIXTURES, ONTOLOGY_IRI, term_files

# ---------------------- Readers ----------------------


def test_name_list_trims_and_skips():
    data = b"# genes\n\n  G1  \r\nG2\n#G3\nG4"
    assert read_name_list(data) == ["G1", "G2", "G4"]


def test_name_list_keeps_line_numbers():
    entries = read_name_entries(b"# header\nG1\n\nG2\n", "genes.txt")
    assert [(n, s.line) for n, s in entries] == [("G1", 2), ("G2", 4)]


def test_name_list_duplicate_names_both_lines():
    with pytest.raises(IngestError, match=r"duplicate name 'G1' on lines 1 and 3"):
        read_name_list(b"G1\nG2\nG1\n", "genes.txt")


def test_invalid_utf8_reports_byte_offset():
    with pytest.raises(IngestError, match="byte offset 3"):
        read_name_list(b"G1\n\xff\n")


def test_bom_is_dropped():
    assert read_name_list("\ufeffG1\n".encode("utf-8")) == ["G1"]


def test_render_name_list_reads_back():
    names = ["MTGENE001", "anatomical structure 01", "ATP synthase complex"]
    assert read_name_list(render_name_list(names)) == names


def test_disease_table_optional_columns():
    rows = read_disease_table(b"MD1\t\t\nMD2\t500002\tlong name two\n")
    assert rows == [DiseaseRecord("MD1"), DiseaseRecord("MD2", "500002", "long name two")]
    assert rows[1].span.line == 2


@pytest.mark.parametrize(
    "data, message",
    [
        (b"MD1\t1\n", "expected 3 tab-separated columns"),
        (b"\t1\tx\n", "empty disease name"),
        (b"MD1\t\t\nMD1\t2\t\n", "duplicate name 'MD1'"),
    ],
)
def test_disease_table_errors(data, message):
    with pytest.raises(IngestError, match=message):
        read_disease_table(data, "diseases.tsv")


def test_paper_terms():
    rows = read_paper_terms(b"P1\tT1\nP1\tT2\nP2\tT1\n")
    assert [(r.paper_id, r.term) for r in rows] == [("P1", "T1"), ("P1", "T2"), ("P2", "T1")]
    with pytest.raises(IngestError, match="duplicate term 'T1' for P1"):
        read_paper_terms(b"P1\tT1\nP1\tT1\n")
    with pytest.raises(IngestError, match="expected 2"):
        read_paper_terms(b"P1\n")


@pytest.mark.parametrize(
    "reader, data, line, field",
    [
        (read_name_list, b"G1\nG\tX\n", 2, "name"),
        (read_name_list, b"G1\nG\rX\n", 2, "name"),
        (read_name_list, b"G\x07X\n", 1, "name"),
        (read_disease_table, b"MD1\t\t\nMD2\t\tlong\rname\n", 2, "long name"),
        (read_paper_terms, b"P1\tT\x1b1\n", 1, "term"),
    ],
)
def test_control_characters_rejected_with_line(reader, data, line, field):
    with pytest.raises(IngestError, match=f"{field} contains control character") as excinfo:
        reader(data, "src.txt")
    assert excinfo.value.span.line == line
    assert str(excinfo.value).startswith(f"src.txt:{line}: ")


def test_bundled_fixture_sizes():
    assert len(read_disease_table((FIXTURES / "diseases.tsv").read_bytes())) == 41
    assert len(read_name_list((FIXTURES / "genes.txt").read_bytes())) == 761
    assert len(read_name_list((FIXTURES / "human_anatomy.txt").read_bytes())) == 61
    assert len(read_name_list((FIXTURES / "proteins.txt").read_bytes())) == 479
    files = term_files(FIXTURES)
    assert len(files) == 30
    per_file = [read_paper_terms(f.read_bytes(), f.name) for f in files]
    assert sum(len(terms) for terms in per_file) == 2174
    assert all(len({t.paper_id for t in terms}) == 1 for terms in per_file)
    assert [len(terms) for terms in per_file] == [73] * 14 + [72] * 16


# ---------------------- Sources ----------------------


def test_inline_and_file_sources(tmp_path):
    path = tmp_path / "genes.txt"
    path.write_bytes(b"G1\n")
    assert resolve_source(SourceLocator(Scheme.FILE, str(path))) == b"G1\n"
    assert resolve_source(SourceLocator(Scheme.INLINE, ("a", "b"))) == b"a\nb\n"


def test_missing_file_is_source_error(tmp_path):
    with pytest.raises(SourceError, match="not found"):
        resolve_source(SourceLocator(Scheme.FILE, str(tmp_path / "absent.txt")))


def test_locator_mode_rules(tmp_path):
    with pytest.raises(ValueError, match="live mode requires"):
        SourceLocator(Scheme.FILE, "genes.txt", Mode.LIVE)
    with pytest.raises(ValueError, match="release_copy"):
        SourceLocator(Scheme.HTTPS, "https://example.org/genes.txt")


def test_release_mode_never_touches_network(tmp_path):
    copy = tmp_path / "genes.txt"
    copy.write_bytes(b"G1\n")

    def fetch(url, timeout):
        raise AssertionError("network used in release mode")

    loc = SourceLocator(Scheme.HTTPS, "https://example.org/genes.txt", Mode.RELEASE, str(copy))
    assert resolve_source(loc, fetch) == b"G1\n"


def test_live_mode_fetches_with_timeout(tmp_path, monkeypatch):
    calls = []

    def fetch(url, timeout):
        calls.append((url, timeout))
        return b"G9\n"

    monkeypatch.setattr("src.ingest.sources.Config.FETCH_TIMEOUT", 7.5)
    loc = SourceLocator(Scheme.HTTPS, "https://example.org/genes.txt", Mode.LIVE)
    assert resolve_source(loc, fetch) == b"G9\n"
    assert calls == [("https://example.org/genes.txt", 7.5)]


class _Response:
    def __init__(self, status_code, content=b""):
        self.status_code = status_code
        self.content = content


def test_http_fetch_success_sends_no_cache(monkeypatch):
    seen = {}

    def get(url, timeout, headers):
        seen.update(url=url, timeout=timeout, headers=headers)
        return _Response(200, b"G1\n")

    monkeypatch.setattr("src.ingest.sources.requests.get", get)
    assert http_fetch("https://example.org/genes.txt", 3.0) == b"G1\n"
    assert seen["timeout"] == 3.0
    assert seen["headers"]["Cache-Control"] == "no-cache"


def test_http_fetch_network_failure_carries_url(monkeypatch):
    def get(url, timeout, headers):
        raise requests.ConnectionError("connection refused")

    monkeypatch.setattr("src.ingest.sources.requests.get", get)
    with pytest.raises(SourceError, match="fetch failed: connection refused") as excinfo:
        http_fetch("https://example.org/genes.txt", 1.0)
    assert excinfo.value.span.origin == "https://example.org/genes.txt"


def test_http_fetch_non_success_status_carries_url(monkeypatch):
    monkeypatch.setattr("src.ingest.sources.requests.get", lambda url, timeout, headers: _Response(404))
    with pytest.raises(SourceError, match="HTTP 404") as excinfo:
        http_fetch("https://example.org/genes.txt", 1.0)
    assert excinfo.value.span.origin == "https://example.org/genes.txt"
    assert str(excinfo.value) == "https://example.org/genes.txt: HTTP 404 fetching source"


def test_mode_override():
    loc = SourceLocator(Scheme.HTTP, "http://example.org/g.txt", Mode.LIVE)
    with pytest.raises(ValueError):
        loc.with_mode(Mode.RELEASE)
    file_loc = SourceLocator(Scheme.FILE, "g.txt")
    assert file_loc.with_mode(Mode.LIVE) is file_loc


def test_resolve_all_keeps_order_and_collects_failures(tmp_path):
    a = tmp_path / "a.txt"
    a.write_bytes(b"A\n")
    locs = [
        SourceLocator(Scheme.FILE, str(a)),
        SourceLocator(Scheme.FILE, str(tmp_path / "missing.txt")),
        SourceLocator(Scheme.INLINE, ("B",)),
    ]
    results = resolve_all(locs, max_workers=3, return_exceptions=True)
    assert results[0] == b"A\n"
    assert isinstance(results[1], SourceError)
    assert results[2] == b"B\n"
    with pytest.raises(SourceError):
        resolve_all(locs)


# ---------------------- Manifest ----------------------


def _manifest(**overrides):
    doc = {
        "ontology_iri": ONTOLOGY_IRI,
        "base_prefix": BASE,
        "sources": [{"locator": "genes.txt", "format": "name-list", "pattern": "gene"}],
    }
    doc.update(overrides)
    return json.dumps(doc).encode("utf-8")


def test_bundled_manifest():
    manifest = load_manifest_file(FIXTURES / "mdo.json")
    assert len(manifest.sources) == 6 + 30
    assert [s.parent for s in manifest.sources] == [
        "Disease",
        "Gene",
        "HumanAnatomy",
        "MitochondrialAnatomy",
        "Protein",
        "Paper",
    ] + ["Term"] * 30
    assert manifest.sources[-1].locator.target == str(FIXTURES / "terms" / "PMID-30000030.tsv")
    inline = manifest.sources[3].locator
    assert inline.scheme is Scheme.INLINE and len(inline.target) == 15
    assert manifest.sources[1].locator.target == str(FIXTURES / "genes.txt")
    assert manifest.deprecations is not None


def test_manifest_syntax_error_has_position():
    with pytest.raises(ManifestError) as exc:
        load_manifest(b'{\n  "sources": [,]\n}', "m.json")
    assert exc.value.span.line == 2
    assert exc.value.span.column is not None
    assert "syntax error" in str(exc.value)


@pytest.mark.parametrize(
    "overrides, message",
    [
        ({"sources": [{"locator": "g.txt", "format": "name-list", "pattern": "organelle"}]}, "unknown pattern: organelle"),
        ({"sources": [{"locator": "g.txt", "format": "xml", "pattern": "gene"}]}, "unknown format: xml"),
        ({"sources": [{"locator": "g.txt", "format": "name-list", "pattern": "named"}]}, "missing required key 'parent'"),
        ({"sources": [{"locator": "g.txt", "format": "name-list", "pattern": "named", "parent": "Cell"}]}, "unknown parent: Cell"),
        ({"sources": [{"locator": "g.txt", "format": "paper-terms", "pattern": "gene"}]}, "cannot consume"),
        ({"sources": [{"locator": "g.txt", "format": "name-list", "pattern": "gene", "mode": "live"}]}, "live mode requires"),
        ({"sources": [{"locator": "g.txt", "format": "name-list", "pattern": "gene", "colour": "x"}]}, "unknown key"),
        ({"extra": "x"}, "unknown key"),
        ({"base_prefix": "mdo#"}, "not an absolute IRI"),
        ({"sources": [{"inline": ["a"], "format": "disease-table", "pattern": "disease"}]}, "inline arrays"),
    ],
)
def test_manifest_validation(overrides, message):
    with pytest.raises(ManifestError, match=message):
        load_manifest(_manifest(**overrides))


def test_manifest_rejects_duplicate_keys_and_non_strings():
    with pytest.raises(ManifestError, match="duplicate key"):
        load_manifest(b'{"ontology_iri": "http://a/b", "ontology_iri": "http://a/c", "sources": []}')
    with pytest.raises(ManifestError, match="only strings"):
        load_manifest(_manifest(version=2))


def test_manifest_release_copy(tmp_path):
    data = _manifest(
        sources=[
            {
                "locator": "https://example.org/genes.txt",
                "release_copy": "genes.txt",
                "format": "name-list",
                "pattern": "gene",
            }
        ]
    )
    manifest = load_manifest(data, "m.json", tmp_path)
    loc = manifest.sources[0].locator
    assert loc.scheme is Scheme.HTTPS and loc.mode is Mode.RELEASE
    assert loc.release_copy == str(tmp_path / "genes.txt")
