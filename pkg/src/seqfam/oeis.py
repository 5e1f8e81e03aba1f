"""Leading-term lookup of generated sequences against the OEIS catalog.

Lookups go through three layers: an on-disk cache of previous network
answers, a bundled fixture snapshot of the catalog entries this package's
families are known to generate, and finally the public search endpoint.
Offline mode (the default for the test suite) uses the fixtures only, so no
test ever needs the network.

A query is a list of at least 8 leading terms; an entry matches when the
query appears as a consecutive run of its terms.  Matching is by terms only;
the catalog identifiers carried in fixtures and responses are opaque labels.
"""

from __future__ import annotations

import hashlib
import json
import os
import threading
import time
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .families import Family, X, family_label

SEARCH_URL = "https://oeis.org/search?q=signed:{terms}&fmt=json"
B_FILE_URL = "https://oeis.org/{ident}/b{digits}.txt"

MIN_QUERY_TERMS = 8
MIN_REQUEST_INTERVAL_S = 1.0
MAX_ATTEMPTS = 3


class TransportError(RuntimeError):
    """The network layer failed; never silently reported as 'no match'."""


class ParseError(ValueError):
    """The endpoint answered with something unparseable; raw payload kept."""

    def __init__(self, message: str, payload: str):
        super().__init__(message)
        self.payload = payload


@dataclass(frozen=True)
class OeisMatch:
    """Outcome of one query: the terms submitted, ids matched, and where from."""

    terms: Tuple[int, ...]
    ids: Tuple[str, ...]
    source: str  # "network" | "cache" | "fixture"
    ambiguous: bool = False

    def to_json_dict(self) -> dict:
        return {
            "terms": list(self.terms),
            "ids": list(self.ids),
            "source": self.source,
            "ambiguous": self.ambiguous,
        }


def _contains_run(haystack: Sequence[int], needle: Sequence[int]) -> bool:
    k = len(needle)
    if k == 0 or k > len(haystack):
        return False
    first = needle[0]
    for i in range(len(haystack) - k + 1):
        if haystack[i] == first and list(haystack[i:i + k]) == list(needle):
            return True
    return False


def _load_fixtures() -> List[Dict]:
    text = resources.files("seqfam").joinpath("data/oeis_fixtures.jsonl").read_text()
    return [json.loads(line) for line in text.splitlines() if line.strip()]


_fixtures_cache: Optional[List[Dict]] = None


def fixture_entries() -> List[Dict]:
    global _fixtures_cache
    if _fixtures_cache is None:
        _fixtures_cache = _load_fixtures()
    return _fixtures_cache


def default_cache_dir() -> Path:
    env = os.environ.get("SEQFAM_CACHE_DIR")
    if env:
        return Path(env)
    xdg = os.environ.get("XDG_CACHE_HOME")
    base = Path(xdg) if xdg else Path.home() / ".cache"
    return base / "seqfam"


def _requests_transport(url: str) -> str:
    import requests

    try:
        response = requests.get(url, timeout=30)
        response.raise_for_status()
        return response.text
    except requests.RequestException as exc:  # noqa: BLE001 - single network seam
        raise TransportError(f"request failed: {url}: {exc}") from exc


class OeisClient:
    """Rate-limited catalog client with cache, fixtures and offline mode.

    ``transport`` maps a URL to response text and exists so tests can fake
    the network; the default uses requests.  Network requests are serialized
    through one gate and spaced at least ``min_interval`` seconds apart, with
    exponential backoff on failure.
    """

    def __init__(self, offline: bool = False, cache_dir: Optional[Path] = None,
                 transport: Optional[Callable[[str], str]] = None,
                 min_interval: float = MIN_REQUEST_INTERVAL_S):
        self.offline = offline
        self.cache_dir = Path(cache_dir) if cache_dir is not None else default_cache_dir()
        self._transport = transport or _requests_transport
        self._min_interval = min_interval
        self._gate = threading.Lock()
        self._last_request = 0.0

    # -- cache ------------------------------------------------------------

    def _cache_path(self, terms: Sequence[int]) -> Path:
        digest = hashlib.sha256(",".join(str(t) for t in terms).encode()).hexdigest()[:24]
        return self.cache_dir / f"terms-{digest}.json"

    def _cache_read(self, terms: Sequence[int]) -> Optional[Tuple[str, ...]]:
        path = self._cache_path(terms)
        try:
            record = json.loads(path.read_text())
        except (OSError, json.JSONDecodeError):
            return None
        if record.get("terms") != list(terms):
            return None
        return tuple(record.get("ids", ()))

    def _cache_write(self, terms: Sequence[int], ids: Sequence[str]) -> None:
        self.cache_dir.mkdir(parents=True, exist_ok=True)
        path = self._cache_path(terms)
        record = {"terms": list(terms), "ids": list(ids), "captured_at": time.time()}
        tmp = path.with_suffix(".tmp")
        tmp.write_text(json.dumps(record) + "\n")
        os.replace(tmp, path)

    # -- network ----------------------------------------------------------

    def _fetch(self, url: str) -> str:
        with self._gate:
            error: Optional[Exception] = None
            for attempt in range(MAX_ATTEMPTS):
                wait = self._min_interval - (time.monotonic() - self._last_request)
                if wait > 0:
                    time.sleep(wait)
                self._last_request = time.monotonic()
                try:
                    return self._transport(url)
                except TransportError as exc:
                    error = exc
                    if attempt + 1 < MAX_ATTEMPTS:
                        time.sleep(self._min_interval * 2 ** attempt)
            raise TransportError(f"giving up on {url} after {MAX_ATTEMPTS} attempts") from error

    def _search_network(self, terms: Sequence[int]) -> Tuple[str, ...]:
        url = SEARCH_URL.format(terms=",".join(str(t) for t in terms))
        payload = self._fetch(url)
        try:
            body = json.loads(payload)
        except json.JSONDecodeError as exc:
            raise ParseError(f"unparseable search response: {exc}", payload) from exc
        results = body.get("results") if isinstance(body, dict) else None
        if results is None:
            return ()
        ids = []
        for entry in results:
            try:
                number = int(entry["number"])
                data = [int(t) for t in str(entry.get("data", "")).split(",") if t.strip()]
            except (KeyError, TypeError, ValueError) as exc:
                raise ParseError(f"malformed search entry: {exc}", payload) from exc
            ident = f"A{number:06d}"
            if _contains_run(data, terms) or self._b_file_contains(ident, terms):
                ids.append(ident)
        return tuple(ids)

    def _b_file_contains(self, ident: str, terms: Sequence[int]) -> bool:
        try:
            values = self.fetch_b_file(ident)
        except (TransportError, ParseError):
            return False
        return _contains_run(values, terms)

    def fetch_b_file(self, ident: str) -> List[int]:
        """Retrieve and parse an entry's full term listing (one 'n a(n)' per line)."""
        url = B_FILE_URL.format(ident=ident, digits=ident.lstrip("A"))
        payload = self._fetch(url)
        return parse_b_file(payload)

    # -- lookup -----------------------------------------------------------

    def search_by_terms(self, terms: Sequence[int]) -> OeisMatch:
        """Match the given leading terms against the catalog.

        Consults the cache, then the fixture snapshot, then (if online) the
        search endpoint.  Degenerate queries (a single repeated value) are
        flagged ambiguous rather than treated as errors.
        """
        terms = tuple(int(t) for t in terms)
        if len(terms) < MIN_QUERY_TERMS:
            raise ValueError(f"need at least {MIN_QUERY_TERMS} terms, got {len(terms)}")
        ambiguous = len(set(terms)) < 2

        if not self.offline:
            cached = self._cache_read(terms)
            if cached is not None:
                return OeisMatch(terms=terms, ids=cached, source="cache", ambiguous=ambiguous)

        fixture_ids = tuple(
            entry["id"] for entry in fixture_entries()
            if _contains_run(entry["terms"], terms)
        )
        if fixture_ids or self.offline:
            return OeisMatch(terms=terms, ids=fixture_ids, source="fixture", ambiguous=ambiguous)

        ids = self._search_network(terms)
        self._cache_write(terms, ids)
        return OeisMatch(terms=terms, ids=ids, source="network", ambiguous=ambiguous)


def parse_b_file(text: str) -> List[int]:
    """Parse b-file text: '#' comments and blank lines skipped, 'n a(n)' rows."""
    values = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) < 2:
            raise ParseError(f"malformed b-file line: {line!r}", text)
        values.append(int(parts[1]))
    return values


def search_by_terms(terms: Sequence[int], offline: bool = False,
                    cache_dir: Optional[Path] = None) -> OeisMatch:
    return OeisClient(offline=offline, cache_dir=cache_dir).search_by_terms(terms)


def window_terms(family: Family, axis: str, fixed: int, rng: Tuple[int, int]) -> List[int]:
    """Integer terms of one row (fixed n, m varying) or column (fixed m, n varying)."""
    lo, hi = rng
    if axis == "row":
        values = [X(family, fixed, m) for m in range(lo, hi + 1)]
    elif axis == "column":
        values = [X(family, n, fixed) for n in range(lo, hi + 1)]
    else:
        raise ValueError(f"axis must be 'row' or 'column', got {axis!r}")
    terms = []
    for value in values:
        if not isinstance(value, int):
            raise ValueError(
                f"{family_label(family)} produces non-integer terms; cannot query the catalog")
        terms.append(value)
    return terms


def cross_check(family: Family, axis: str, fixed: int, rng: Tuple[int, int],
                client: Optional[OeisClient] = None) -> Tuple[OeisMatch, bool]:
    """Generate a row or column window, query it, and report (match, verdict).

    The verdict is true iff at least one catalog entry matched.
    """
    terms = window_terms(family, axis, fixed, rng)
    if len(terms) < MIN_QUERY_TERMS:
        raise ValueError(f"range yields {len(terms)} terms; need >= {MIN_QUERY_TERMS}")
    client = client or OeisClient()
    match = client.search_by_terms(terms)
    return match, bool(match.ids)
