"""Sequence assembly: engine runs, oracle cross-checks, result records.

Every public seq function computes its terms with the sweep engine,
then replays a prefix on the brute-force oracle and refuses to return
on any disagreement: a mismatch raises OracleMismatchError carrying
the tile alphabet and the offending weight polynomial, because a
wrong count with a plausible look is the worst failure mode this
package has.  Latin triangles have no engine route and are computed
by the oracle outright, marked as such in the record.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Any, Iterable, Mapping

from . import __version__ as ENGINE_VERSION
from . import oracle, umbra
from .dp import rectangle, trapezoid3, weight_series
from .tiles import ShiftSpec, dump_tiles, enumerate_tiles

GEN_DER = "gen-der"
GLR3 = "glr3"
TRAPEZOID = "trapezoid"
TRIANGLE = "triangle-oracle"

#: trapezoid boards in shift-set form: rows n, n-1, n-2, middle cells
#: avoid the identity at offsets {0,-1}, top at {0,-2} against row 0
#: and {0,-1} against the middle row
TRAPEZOID_SPEC = ShiftSpec.three_rows({0, -1}, {0, -2}, {0, -1})

DEFAULT_ORACLE_DEPTH = {GEN_DER: 7, GLR3: 5, TRAPEZOID: 7}


class OracleMismatchError(RuntimeError):
    """Engine and oracle disagree; carries enough context to debug."""

    def __init__(self, message: str, diagnostics: str):
        super().__init__(message + "\n" + diagnostics)
        self.diagnostics = diagnostics


@dataclass
class SequenceRecord:
    """One computed prefix, with enough metadata to reproduce it."""

    family: str
    params: dict[str, Any]
    offset: int
    terms: list[int]
    reduced: bool
    provenance: str
    engine_version: str
    duration_seconds: float

    @property
    def last_n(self) -> int:
        return self.offset + len(self.terms) - 1

    def term(self, n: int) -> int:
        i = n - self.offset
        if not 0 <= i < len(self.terms):
            raise IndexError(f"term {n} outside {self.offset}..{self.last_n}")
        return self.terms[i]

    def indexed_terms(self) -> list[tuple[int, int]]:
        return [(self.offset + i, t) for i, t in enumerate(self.terms)]

    def to_json_dict(self) -> dict[str, Any]:
        return {
            "family": self.family,
            "params": self.params,
            "offset": self.offset,
            "terms": [str(t) for t in self.terms],
            "reduced": self.reduced,
            "provenance": self.provenance,
            "engine_version": self.engine_version,
            "duration_seconds": self.duration_seconds,
        }

    @classmethod
    def from_json_dict(cls, data: Mapping[str, Any]) -> "SequenceRecord":
        return cls(
            family=data["family"],
            params=dict(data["params"]),
            offset=int(data["offset"]),
            terms=[int(t) for t in data["terms"]],
            reduced=bool(data["reduced"]),
            provenance=data["provenance"],
            engine_version=data["engine_version"],
            duration_seconds=float(data["duration_seconds"]),
        )


@dataclass(frozen=True)
class JobSpec:
    """What to compute; the CLI builds one of these per invocation."""

    family: str
    params: dict[str, Any] = field(default_factory=dict)
    n_terms: int = 10
    oracle_depth: int | None = None
    total: bool = False


def _check_oracle(
    n: int, engine_value: int, oracle_value: int, context: str, diagnostics: str
) -> None:
    if engine_value != oracle_value:
        raise OracleMismatchError(
            f"engine/oracle mismatch at n={n} for {context}: "
            f"engine={engine_value} oracle={oracle_value}",
            diagnostics,
        )


def _depth(family: str, requested: int | None, n_terms: int, cap: int) -> int:
    if requested is None:
        requested = DEFAULT_ORACLE_DEPTH[family]
    return max(0, min(requested, cap))


def gen_der_seq(
    shifts: Iterable[int], n_terms: int, oracle_depth: int | None = None
) -> SequenceRecord:
    """Permutations with i - pi(i) never in the shift set, n = 1..n_terms."""
    t0 = time.perf_counter()
    spec = ShiftSpec.two_rows(shifts)
    tiles = enumerate_tiles(spec)
    table = weight_series(tiles, rectangle(2), n_terms)
    terms = [umbra.umbral_eval_2row(table.poly(n)) for n in range(1, n_terms + 1)]
    depth = _depth(GEN_DER, oracle_depth, n_terms, oracle.MAX_N_TWO_ROWS)
    for n in range(1, min(depth, n_terms) + 1):
        ref = oracle.count_generalized_perms(spec.s12, n)
        _check_oracle(
            n, terms[n - 1], ref, spec.describe(),
            f"tiles:\n{dump_tiles(tiles)}\nP_{n} = {table.poly(n).canonical_str()}",
        )
    return SequenceRecord(
        family=GEN_DER,
        params={"shifts": sorted(spec.s12)},
        offset=1,
        terms=terms,
        reduced=True,
        provenance="engine",
        engine_version=ENGINE_VERSION,
        duration_seconds=time.perf_counter() - t0,
    )


def glr3_seq(
    s12: Iterable[int],
    s13: Iterable[int],
    s23: Iterable[int],
    n_terms: int,
    oracle_depth: int | None = None,
) -> SequenceRecord:
    """Reduced 3-row boards avoiding the three shift sets, n = 1..n_terms."""
    t0 = time.perf_counter()
    spec = ShiftSpec.three_rows(s12, s13, s23)
    tiles = enumerate_tiles(spec)
    table = weight_series(tiles, rectangle(3), n_terms)
    terms = [umbra.umbral_eval_3row(table.poly(n), n) for n in range(1, n_terms + 1)]
    depth = _depth(GLR3, oracle_depth, n_terms, oracle.MAX_N_THREE_ROWS)
    for n in range(1, min(depth, n_terms) + 1):
        ref = oracle.count_glr3(spec.s12, spec.s13, spec.s23, n)
        _check_oracle(
            n, terms[n - 1], ref, spec.describe(),
            f"tiles:\n{dump_tiles(tiles)}\nP_{n} = {table.poly(n).canonical_str()}",
        )
    return SequenceRecord(
        family=GLR3,
        params={
            "s12": sorted(spec.s12),
            "s13": sorted(spec.s13),
            "s23": sorted(spec.s23),
        },
        offset=1,
        terms=terms,
        reduced=True,
        provenance="engine",
        engine_version=ENGINE_VERSION,
        duration_seconds=time.perf_counter() - t0,
    )


def trapezoid_seq(n_terms: int, oracle_depth: int | None = None) -> SequenceRecord:
    """Latin trapezoids with rows n, n-1, n-2; terms for n = 3..n_terms+2."""
    t0 = time.perf_counter()
    tiles = enumerate_tiles(TRAPEZOID_SPEC)
    n_max = n_terms + 2
    table = weight_series(tiles, trapezoid3(), n_max)
    terms = [umbra.umbral_eval_trapezoid(table.poly(n), n) for n in range(3, n_max + 1)]
    depth = _depth(TRAPEZOID, oracle_depth, n_terms, oracle.MAX_N_TRAPEZOID)
    for n in range(3, min(depth, n_max) + 1):
        ref = oracle.count_trapezoid3(n)
        _check_oracle(
            n, terms[n - 3], ref, "trapezoid3",
            f"tiles:\n{dump_tiles(tiles)}\nP_{n} = {table.poly(n).canonical_str()}",
        )
    return SequenceRecord(
        family=TRAPEZOID,
        params={},
        offset=3,
        terms=terms,
        reduced=True,
        provenance="engine",
        engine_version=ENGINE_VERSION,
        duration_seconds=time.perf_counter() - t0,
    )


def triangle_seq(n_terms: int) -> SequenceRecord:
    """Latin triangles (rows n..1), oracle-only; terms for n = 3..n_terms+2."""
    t0 = time.perf_counter()
    n_max = n_terms + 2
    if n_max > oracle.MAX_N_TRIANGLE:
        raise oracle.OracleLimitError(
            f"triangle counts stop at n={oracle.MAX_N_TRIANGLE}; asked for n={n_max}"
        )
    terms = [oracle.count_latin_triangle(n) for n in range(3, n_max + 1)]
    return SequenceRecord(
        family=TRIANGLE,
        params={},
        offset=3,
        terms=terms,
        reduced=True,
        provenance="oracle",
        engine_version=ENGINE_VERSION,
        duration_seconds=time.perf_counter() - t0,
    )


def apply_total(record: SequenceRecord) -> SequenceRecord:
    """Drop the reduction: multiply term n by n! (row 0 free again)."""
    if not record.reduced:
        return record
    terms = [t * math.factorial(n) for n, t in record.indexed_terms()]
    return SequenceRecord(
        family=record.family,
        params=record.params,
        offset=record.offset,
        terms=terms,
        reduced=False,
        provenance=record.provenance,
        engine_version=record.engine_version,
        duration_seconds=record.duration_seconds,
    )


def run_job(job: JobSpec) -> SequenceRecord:
    if job.n_terms < 1:
        raise ValueError(f"need at least one term, got {job.n_terms}")
    if job.family == GEN_DER:
        rec = gen_der_seq(job.params["shifts"], job.n_terms, job.oracle_depth)
    elif job.family == GLR3:
        rec = glr3_seq(
            job.params["s12"], job.params["s13"], job.params["s23"],
            job.n_terms, job.oracle_depth,
        )
    elif job.family == TRAPEZOID:
        rec = trapezoid_seq(job.n_terms, job.oracle_depth)
    elif job.family == TRIANGLE:
        rec = triangle_seq(job.n_terms)
    else:
        raise ValueError(f"unknown family {job.family!r}")
    return apply_total(rec) if job.total else rec
