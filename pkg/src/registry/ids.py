"""Persistent numeric identifier minting and IRI construction."""
import logging
import os
import re
from contextlib import contextmanager
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, Iterable, Iterator, List, Optional, Tuple, Union

from src.config import Config
from src.errors import RegistryError, SourceSpan
from src.utils import atomic_write_text, split_lines

logger = logging.getLogger("ontoforge")

_LOCAL_SAFE = re.compile(r"[A-Za-z0-9_\-]")


@dataclass
class IdRegistry:
    """
    Append-only mapping from entity labels to positive integer ids.

    Ids are never removed or reassigned; ``next_id`` is always greater than every assigned id.
    """

    entries: Dict[str, int] = field(default_factory=dict)
    next_id: int = 1

    def __post_init__(self):
        ids = list(self.entries.values())
        if len(set(ids)) != len(ids):
            raise ValueError("registry ids must be unique")
        if any(i < 1 for i in ids):
            raise ValueError("registry ids must be positive")
        self.next_id = max([self.next_id, *(i + 1 for i in ids)])

    def __len__(self) -> int:
        return len(self.entries)

    def get(self, label: str) -> Optional[int]:
        return self.entries.get(label)

    def mint(self, label: str) -> int:
        """Return the label's id, assigning ``next_id`` if the label is new."""
        existing = self.entries.get(label)
        if existing is not None:
            return existing
        assigned = self.next_id
        self.entries[label] = assigned
        self.next_id += 1
        return assigned

    def mint_all(self, labels: Iterable[str]) -> List[int]:
        """
        Mint every new label in sorted order so a fresh registry does not depend on input order.

        Returns:
            The newly assigned ids, ascending
        """
        fresh = sorted({lb for lb in labels if lb not in self.entries})
        return [self.mint(lb) for lb in fresh]


def mint_id(label: str, registry: IdRegistry) -> Tuple[int, IdRegistry]:
    """
    Mint (or look up) the id of ``label``.

    The registry is updated in place and returned for chaining; an existing label leaves it unchanged.

    Example:
        >>> reg = IdRegistry()
        >>> mint_id("G1", reg)[0], mint_id("G2", reg)[0], mint_id("G1", reg)[0]
        (1, 2, 1)
    """
    return registry.mint(label), registry


def sanitize_label(label: str) -> str:
    """Spaces become ``_``; anything outside ``[A-Za-z0-9_-]`` is percent-encoded as UTF-8."""
    out = []
    for ch in label.replace(" ", "_"):
        if _LOCAL_SAFE.match(ch):
            out.append(ch)
        else:
            out.append("".join(f"%{b:02X}" for b in ch.encode("utf-8")))
    return "".join(out)


def format_id(numeric_id: int) -> str:
    return f"{Config.ID_PREFIX}{numeric_id:0{Config.ID_WIDTH}d}"


def iri_for(label: str, registry: Optional[IdRegistry], base_prefix: str) -> str:
    """
    Build the IRI of an entity.

    Label mode (no registry) derives the IRI from the sanitized label; minted-ID mode uses the
    label's numeric id, minting it on first sight. Only IRIs differ between the two modes.

    Example:
        >>> iri_for("Chronic PEO", None, "http://example.org/mdo#")
        'http://example.org/mdo#Chronic_PEO'
    """
    label = label.strip()
    if not label:
        raise ValueError("cannot build an IRI for an empty label")
    if registry is None:
        return base_prefix + sanitize_label(label)
    return base_prefix + format_id(registry.mint(label))


# ---------------------- Persistence ----------------------


def load_registry(path: Union[str, Path]) -> IdRegistry:
    """
    Load a registry file (``id<TAB>label`` per line). A missing file is an empty registry.

    Raises:
        RegistryError: on malformed lines, duplicate ids or duplicate labels
    """
    p = Path(path)
    if not p.exists():
        logger.info(f"No identifier registry at {p}; starting empty")
        return IdRegistry()
    text = p.read_text(encoding="utf-8")
    entries: Dict[str, int] = {}
    seen_ids: Dict[int, int] = {}
    for lineno, line in enumerate(split_lines(text), start=1):
        if not line.strip():
            continue
        span = SourceSpan(str(p), lineno)
        parts = line.split("\t")
        if len(parts) != 2 or not parts[0].isdigit() or not parts[1]:
            raise RegistryError("malformed registry line, expected id<TAB>label", span)
        numeric, label = int(parts[0]), parts[1]
        if numeric < 1:
            raise RegistryError(f"registry id must be positive: {numeric}", span)
        if numeric in seen_ids:
            raise RegistryError(f"id {numeric} assigned twice (first on line {seen_ids[numeric]})", span)
        if label in entries:
            raise RegistryError(f"label {label!r} registered twice", span)
        seen_ids[numeric] = lineno
        entries[label] = numeric
    logger.info(f"Loaded {len(entries)} identifiers from {p}")
    return IdRegistry(entries=entries)


def render_registry(registry: IdRegistry) -> str:
    lines = []
    for label, numeric in sorted(registry.entries.items(), key=lambda kv: kv[1]):
        if "\t" in label or "\n" in label or "\r" in label:
            raise RegistryError(f"label {label!r} cannot be persisted: contains a tab or newline")
        lines.append(f"{numeric}\t{label}\n")
    return "".join(lines)


def check_no_regression(registry: IdRegistry, path: Union[str, Path]):
    """
    Refuse to persist a registry that lost or renumbered an entry present on disk.

    Raises:
        RegistryError: "registry regression" naming the first missing entry
    """
    on_disk = load_registry(path)
    for label, numeric in sorted(on_disk.entries.items(), key=lambda kv: kv[1]):
        if registry.entries.get(label) != numeric:
            raise RegistryError(f"registry regression: {label!r} (id {numeric}) would be lost", SourceSpan(str(path)))


def save_registry(registry: IdRegistry, path: Union[str, Path]):
    """Persist atomically, sorted by id, never shrinking the on-disk entry set."""
    check_no_regression(registry, path)
    atomic_write_text(path, render_registry(registry))
    logger.info(f"Saved {len(registry)} identifiers to {path}")


@contextmanager
def registry_lock(path: Union[str, Path]) -> Iterator[Path]:
    """
    Hold the registry for the duration of a build via an exclusively created marker file.

    Usage:
        with registry_lock("ids.tsv"):
            ...  # load, mint, save

    Raises:
        RegistryError: if another build holds the lock
    """
    lock = Path(f"{path}.lock")
    lock.parent.mkdir(parents=True, exist_ok=True)
    try:
        fd = os.open(str(lock), os.O_CREAT | os.O_EXCL | os.O_WRONLY)
    except FileExistsError as e:
        raise RegistryError(f"registry is locked by another build (remove {lock} if stale)", SourceSpan(str(path))) from e
    try:
        os.write(fd, str(os.getpid()).encode("ascii"))
        os.close(fd)
        yield lock
    finally:
        try:
            lock.unlink()
        except FileNotFoundError:
            pass
