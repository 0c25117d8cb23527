"""OEIS b-file plumbing: parse, format, fetch with a local cache,
and compare a computed record against catalog terms.

Comparison never silently passes: the report says how many indexed
terms overlapped and where the first divergence sits, and a fetch
that cannot happen (offline with a cold cache) comes back as status
"unverifiable" rather than as a success.
"""

from __future__ import annotations

import os
import re
import urllib.error
import urllib.request
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping

from .sequences import SequenceRecord

CACHE_ENV_VAR = "LATINRECT_OEIS_CACHE"

MATCH = "match"
MISMATCH = "mismatch"
UNVERIFIABLE = "unverifiable"


class OeisUnavailableError(RuntimeError):
    """The b-file could not be obtained, locally or remotely."""


class BFileFormatError(ValueError):
    """A line of a b-file did not parse as 'n value'."""


def canonical_id(raw: str) -> str:
    """'a271' / '271' / 'A000271' -> 'A000271'."""
    m = re.fullmatch(r"[Aa]?0*([0-9]{1,6})", raw.strip())
    if not m:
        raise ValueError(f"not an OEIS id: {raw!r}")
    return f"A{int(m.group(1)):06d}"


def bfile_url(oeis_id: str) -> str:
    oeis_id = canonical_id(oeis_id)
    return f"https://oeis.org/{oeis_id}/b{oeis_id[1:]}.txt"


def parse_bfile(text: str) -> dict[int, int]:
    """b-file lines are 'n a(n)'; comments start with '#'."""
    out: dict[int, int] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise BFileFormatError(f"line {lineno}: expected 'n value', got {line!r}")
        try:
            n, value = int(parts[0]), int(parts[1])
        except ValueError:
            raise BFileFormatError(f"line {lineno}: non-integer field in {line!r}") from None
        if n in out:
            raise BFileFormatError(f"line {lineno}: duplicate index {n}")
        out[n] = value
    return out


def format_bfile(record: SequenceRecord, comments: tuple[str, ...] = ()) -> str:
    lines = [f"# {c}" for c in comments]
    lines += [f"{n} {t}" for n, t in record.indexed_terms()]
    return "\n".join(lines) + "\n"


def default_cache_dir() -> Path:
    env = os.environ.get(CACHE_ENV_VAR)
    if env:
        return Path(env)
    return Path.home() / ".cache" / "latinrect" / "oeis"


def cache_path(oeis_id: str, cache_dir: Path | None = None) -> Path:
    base = cache_dir if cache_dir is not None else default_cache_dir()
    return base / f"b{canonical_id(oeis_id)[1:]}.txt"


def fetch_bfile(
    oeis_id: str,
    cache_dir: Path | None = None,
    offline: bool = False,
    timeout: float = 20.0,
) -> str:
    """Return b-file text, from cache when present.  A fresh download
    lands in the cache so later runs work offline."""
    path = cache_path(oeis_id, cache_dir)
    if path.exists():
        return path.read_text()
    if offline:
        raise OeisUnavailableError(f"offline and no cached b-file at {path}")
    url = bfile_url(oeis_id)
    try:
        with urllib.request.urlopen(url, timeout=timeout) as resp:
            text = resp.read().decode("utf-8")
    except (urllib.error.URLError, OSError, ValueError) as exc:
        raise OeisUnavailableError(f"could not fetch {url}: {exc}") from exc
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)
    return text


@dataclass(frozen=True)
class OeisReport:
    oeis_id: str
    status: str
    terms_compared: int
    first_divergence: int | None
    detail: str

    def summary(self) -> str:
        head = f"{self.oeis_id}: {self.status.upper()} ({self.terms_compared} terms compared)"
        return f"{head} -- {self.detail}" if self.detail else head


def compare_terms(
    record: SequenceRecord, reference: Mapping[int, int], oeis_id: str
) -> OeisReport:
    """Compare on the overlap of indices; no overlap is unverifiable."""
    overlap = [n for n, _ in record.indexed_terms() if n in reference]
    if not overlap:
        return OeisReport(
            oeis_id=oeis_id,
            status=UNVERIFIABLE,
            terms_compared=0,
            first_divergence=None,
            detail=f"no overlapping indices (record {record.offset}..{record.last_n})",
        )
    for n in overlap:
        if record.term(n) != reference[n]:
            return OeisReport(
                oeis_id=oeis_id,
                status=MISMATCH,
                terms_compared=len(overlap),
                first_divergence=n,
                detail=f"a({n}): computed {record.term(n)}, catalog {reference[n]}",
            )
    return OeisReport(
        oeis_id=oeis_id,
        status=MATCH,
        terms_compared=len(overlap),
        first_divergence=None,
        detail="",
    )


def oeis_check(
    record: SequenceRecord,
    oeis_id: str,
    cache_dir: Path | None = None,
    offline: bool = False,
) -> OeisReport:
    oeis_id = canonical_id(oeis_id)
    try:
        text = fetch_bfile(oeis_id, cache_dir=cache_dir, offline=offline)
    except OeisUnavailableError as exc:
        return OeisReport(
            oeis_id=oeis_id,
            status=UNVERIFIABLE,
            terms_compared=0,
            first_divergence=None,
            detail=str(exc),
        )
    return compare_terms(record, parse_bfile(text), oeis_id)
