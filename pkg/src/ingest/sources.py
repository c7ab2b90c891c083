"""Source locators: local files, inline name arrays and live HTTP fetches."""
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Callable, List, Optional, Sequence, Tuple, Union

import requests

from src.config import Config
from src.errors import SourceError, SourceSpan

logger = logging.getLogger("ontoforge")


class Scheme(Enum):
    FILE = "file"
    HTTP = "http"
    HTTPS = "https"
    INLINE = "inline"


class Mode(Enum):
    """``release`` reads a fixed local copy; ``live`` fetches the current version on every build."""

    RELEASE = "release"
    LIVE = "live"


NETWORK_SCHEMES = (Scheme.HTTP, Scheme.HTTPS)


@dataclass(frozen=True)
class SourceLocator:
    """
    Where a source's bytes come from.

    Attributes:
        scheme: file, http, https or inline
        target: file path, URL, or the inline names
        mode: release (default) or live; live requires http/https
        release_copy: local file read instead of the URL when an http source runs in release mode
    """

    scheme: Scheme
    target: Union[str, Tuple[str, ...]]
    mode: Mode = Mode.RELEASE
    release_copy: Optional[str] = None

    def __post_init__(self):
        if self.scheme is Scheme.INLINE:
            if not isinstance(self.target, tuple):
                raise ValueError("inline locators carry a tuple of names")
        elif not isinstance(self.target, str) or not self.target:
            raise ValueError(f"{self.scheme.value} locator needs a non-empty target")
        if self.mode is Mode.LIVE and self.scheme not in NETWORK_SCHEMES:
            raise ValueError(f"live mode requires an http(s) locator, not {self.scheme.value}")
        if self.scheme in NETWORK_SCHEMES and self.mode is Mode.RELEASE and not self.release_copy:
            raise ValueError(f"{self.target} is fetched over the network: set mode live or give a release_copy")

    @property
    def name(self) -> str:
        """Human-readable form used in diagnostics and reports."""
        if self.scheme is Scheme.INLINE:
            return f"inline[{len(self.target)}]"
        return str(self.target)

    def with_mode(self, mode: Optional[Mode]) -> "SourceLocator":
        """
        Apply a build-wide mode override.

        Only network sources are affected; file and inline sources are always release.

        Raises:
            ValueError: release override of a network source without a release copy
        """
        if mode is None or self.scheme not in NETWORK_SCHEMES or mode is self.mode:
            return self
        return SourceLocator(self.scheme, self.target, mode, self.release_copy)


Fetcher = Callable[[str, float], bytes]


def http_fetch(url: str, timeout: float) -> bytes:
    """
    Single GET with a bounded timeout and no caching.

    Raises:
        SourceError: network failure or non-200 status
    """
    logger.info(f"Fetching live source {url} (timeout {timeout:g}s)")
    try:
        resp = requests.get(
            url,
            timeout=timeout,
            headers={"User-Agent": Config.USER_AGENT, "Cache-Control": "no-cache"},
        )
    except requests.RequestException as e:
        raise SourceError(f"fetch failed: {e}", SourceSpan(url)) from e
    if resp.status_code != 200:
        raise SourceError(f"HTTP {resp.status_code} fetching source", SourceSpan(url))
    return resp.content


def _read_file(path: str) -> bytes:
    try:
        return Path(path).read_bytes()
    except FileNotFoundError as e:
        raise SourceError("source file not found", SourceSpan(path)) from e
    except OSError as e:
        raise SourceError(f"cannot read source: {e.strerror}", SourceSpan(path)) from e


def resolve_source(locator: SourceLocator, fetch: Fetcher = http_fetch, timeout: Optional[float] = None) -> bytes:
    """
    Resolve a locator to bytes.

    Args:
        locator: Source locator
        fetch: HTTP fetcher, injectable for tests; called only in live mode
        timeout: Live-fetch timeout, defaults to ``Config.FETCH_TIMEOUT``

    Returns:
        Raw source bytes

    Raises:
        SourceError: missing file, network failure or non-success status
    """
    if locator.scheme is Scheme.INLINE:
        return "".join(f"{name}\n" for name in locator.target).encode("utf-8")
    if locator.scheme is Scheme.FILE:
        return _read_file(str(locator.target))
    if locator.mode is Mode.RELEASE:
        logger.debug(f"{locator.target}: release mode, reading {locator.release_copy}")
        return _read_file(str(locator.release_copy))
    return fetch(str(locator.target), Config.FETCH_TIMEOUT if timeout is None else timeout)


def resolve_all(
    locators: Sequence[SourceLocator],
    fetch: Fetcher = http_fetch,
    max_workers: Optional[int] = None,
    return_exceptions: bool = False,
) -> List[Union[bytes, SourceError]]:
    """
    Resolve many locators concurrently; results come back in input order.

    Args:
        locators: Locators to resolve
        fetch: HTTP fetcher passed to ``resolve_source``
        max_workers: Thread-pool width, defaults to ``Config.FETCH_WORKERS``
        return_exceptions: Put each SourceError in its slot instead of raising

    Raises:
        SourceError: the first failure in input order, unless ``return_exceptions``
    """
    if not locators:
        return []
    workers = min(max_workers or Config.FETCH_WORKERS, len(locators))
    results: List[Union[bytes, SourceError]] = []
    with ThreadPoolExecutor(max_workers=workers) as ex:
        futs = [ex.submit(resolve_source, loc, fetch) for loc in locators]
        for fut in futs:
            try:
                results.append(fut.result())
            except SourceError as e:
                if not return_exceptions:
                    raise
                results.append(e)
    return results
