"""Utility functions for ontoforge."""

import logging
import os
import tempfile
import unicodedata
from pathlib import Path
from typing import List, Union

from src.errors import IngestError, SourceSpan

logger = logging.getLogger("ontoforge")


def decode_utf8(data: bytes, origin: str) -> str:
    """
    Decode a source as UTF-8, failing with the offending byte offset.

    A leading byte-order mark is dropped.

    Args:
        data: Raw bytes of the source
        origin: Source name used in the error

    Returns:
        Decoded text

    Raises:
        IngestError: if the bytes are not valid UTF-8
    """
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as e:
        raise IngestError(f"invalid UTF-8 at byte offset {e.start}", SourceSpan(origin)) from e
    return text[1:] if text.startswith("\ufeff") else text


def split_lines(text: str) -> List[str]:
    """Split on LF, accepting CRLF. A trailing newline does not produce an empty last line."""
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    return [ln[:-1] if ln.endswith("\r") else ln for ln in lines]


def atomic_write_text(path: Union[str, Path], text: str):
    """
    Write ``text`` to ``path`` so readers see either the old file or the complete new one.

    Writes a temporary file in the target directory, then renames it over the target.
    """
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(prefix=f".{target.name}.", suffix=".tmp", dir=str(target.parent))
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as f:
            f.write(text)
            f.flush()
            os.fsync(f.fileno())
        os.replace(tmp, target)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    logger.debug(f"atomic_write_text: wrote {len(text)} chars to {target}")


def plain_text(value: str, span: SourceSpan, field: str) -> str:
    """
    Reject tabs, carriage returns and other control characters inside a field.

    Raises:
        IngestError: naming the field and the offending character
    """
    for c in value:
        if unicodedata.category(c) == "Cc":
            raise IngestError(f"{field} contains control character {c!r}: {value!r}", span)
    return value
