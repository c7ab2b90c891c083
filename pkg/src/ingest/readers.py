"""Readers for flat knowledge-source files: name lists, disease tables and per-paper term files."""
import logging
from typing import Dict, Iterable, Iterator, List, Tuple

from src.errors import IngestError, SourceSpan
from src.patterns.scaffold import DiseaseRecord, TermRecord
from src.utils import decode_utf8, plain_text, split_lines

logger = logging.getLogger("ontoforge")

NAME_LIST = "name-list"
DISEASE_TABLE = "disease-table"
PAPER_TERMS = "paper-terms"
FORMATS = (NAME_LIST, DISEASE_TABLE, PAPER_TERMS)


def _data_lines(data: bytes, origin: str) -> Iterator[Tuple[int, str]]:
    """Yield (line number, raw line) for every line that is neither blank nor a ``#`` comment."""
    for lineno, raw in enumerate(split_lines(decode_utf8(data, origin)), start=1):
        stripped = raw.strip()
        if stripped and not stripped.startswith("#"):
            yield lineno, raw


def _columns(raw: str, expected: int, span: SourceSpan, layout: str) -> List[str]:
    cols = [c.strip() for c in raw.split("\t")]
    if len(cols) != expected:
        raise IngestError(f"expected {expected} tab-separated columns ({layout}), got {len(cols)}", span)
    return [plain_text(c, span, field) for c, field in zip(cols, layout.split(", "))]


def read_name_entries(data: bytes, origin: str = "<bytes>") -> List[Tuple[str, SourceSpan]]:
    """
    Parse a name list keeping each name's source coordinates.

    Returns:
        List of (name, span) in file order

    Raises:
        IngestError: invalid UTF-8, a control character inside a name, or a name listed twice
            (both line numbers reported)
    """
    first_seen: Dict[str, int] = {}
    entries: List[Tuple[str, SourceSpan]] = []
    for lineno, raw in _data_lines(data, origin):
        name = plain_text(raw.strip(), SourceSpan(origin, lineno), "name")
        if name in first_seen:
            raise IngestError(f"duplicate name {name!r} on lines {first_seen[name]} and {lineno}", SourceSpan(origin, lineno))
        first_seen[name] = lineno
        entries.append((name, SourceSpan(origin, lineno)))
    logger.debug(f"read_name_list: {len(entries)} names from {origin}")
    return entries


def read_name_list(data: bytes, origin: str = "<bytes>") -> List[str]:
    """
    One name per line; lines trimmed, blank lines and ``#`` comments skipped, order kept.

    Example:
        >>> read_name_list(b"# header\\n\\nG1\\n")
        ['G1']
    """
    return [name for name, _ in read_name_entries(data, origin)]


def render_name_list(names: Iterable[str]) -> bytes:
    """Inverse of ``read_name_list`` for duplicate-free lists."""
    return "".join(f"{n}\n" for n in names).encode("utf-8")


def read_disease_table(data: bytes, origin: str = "<bytes>") -> List[DiseaseRecord]:
    """
    Parse ``name<TAB>omim<TAB>long name`` rows; empty second or third column means absent.

    Raises:
        IngestError: wrong column count, empty name, or a disease listed twice
    """
    records: List[DiseaseRecord] = []
    first_seen: Dict[str, int] = {}
    for lineno, raw in _data_lines(data, origin):
        span = SourceSpan(origin, lineno)
        name, omim, long_name = _columns(raw, 3, span, "name, omim, long name")
        if not name:
            raise IngestError("empty disease name", span)
        if name in first_seen:
            raise IngestError(f"duplicate name {name!r} on lines {first_seen[name]} and {lineno}", span)
        first_seen[name] = lineno
        records.append(DiseaseRecord(name, omim or None, long_name or None, span))
    logger.debug(f"read_disease_table: {len(records)} rows from {origin}")
    return records


def read_paper_terms(data: bytes, origin: str = "<bytes>") -> List[TermRecord]:
    """
    Parse ``paper_id<TAB>term`` rows. Rows sharing a paper id form that paper's term list.

    Raises:
        IngestError: wrong column count, empty field, or a repeated (paper, term) pair
    """
    records: List[TermRecord] = []
    first_seen: Dict[Tuple[str, str], int] = {}
    for lineno, raw in _data_lines(data, origin):
        span = SourceSpan(origin, lineno)
        paper_id, term = _columns(raw, 2, span, "paper id, term")
        if not paper_id:
            raise IngestError("empty paper id", span)
        if not term:
            raise IngestError("empty term", span)
        key = (paper_id, term)
        if key in first_seen:
            raise IngestError(f"duplicate term {term!r} for {paper_id} on lines {first_seen[key]} and {lineno}", span)
        first_seen[key] = lineno
        records.append(TermRecord(paper_id, term, span))
    papers = len({r.paper_id for r in records})
    logger.debug(f"read_paper_terms: {len(records)} terms across {papers} papers from {origin}")
    return records
