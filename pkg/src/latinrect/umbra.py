"""Umbral evaluation: weight polynomials to integer counts.

The sweep engine produces, for each board, a polynomial in the tile
weight variables.  Counting objects means replacing each monomial by
the number of ways to decorate the corresponding tiling with symbols,
which is a linear operation with a closed form per board family:

  two rows          x^k            ->  k!
  three-row n-board x1^a1 x2^a2 x3^a3 x23^a23
                                   ->  C(n-a1, a23) * a23! * a2! * a3!
  trapezoid n-board (rows n, n-1, n-2)
                                   ->  C(n-a1, a23) * a23! * (a2+1)! * (a3+2)!/2!

In the two-row case x counts free bottom-row cells; k of them take
the remaining k labels in any order.  In the three-row rectangle a1
counts labels committed by tiles touching row 0, a23 counts tiles
pairing rows 1 and 2 (their shared label is chosen among the n-a1
uncommitted ones, in order, hence the binomial times a23!), and the
a2 free row-1 cells and a3 free row-2 cells take their leftover
labels independently.  The trapezoid rows 1 and 2 are short by one
and two cells, which leaves one and two extra labels: the falling
factorials (a2+1)!/1! and (a3+2)!/2! replace a2! and a3!.  That
derivation is spelled out in docs/trapezoid_operator.md.
"""

from __future__ import annotations

import enum
import math
from functools import lru_cache

from .poly import RING_2ROW, RING_3ROW, RingMismatchError, WeightPolynomial


class UmbralKind(enum.Enum):
    TWO_ROW = "two-row"
    THREE_ROW_RECTANGLE = "three-row-rectangle"
    THREE_ROW_TRAPEZOID = "three-row-trapezoid"


@lru_cache(maxsize=None)
def factorial_table(n_max: int) -> tuple[int, ...]:
    """0!..n_max!, computed once per size."""
    if n_max < 0:
        raise ValueError(f"negative factorial table size {n_max}")
    out = [1] * (n_max + 1)
    for i in range(1, n_max + 1):
        out[i] = out[i - 1] * i
    return tuple(out)


def binomial(m: int, j: int) -> int:
    """C(m, j), zero outside the triangle; m must not be negative
    unless the whole term vanishes anyway."""
    if j < 0 or j > m:
        return 0
    return math.comb(m, j)


def umbral_eval_2row(p: WeightPolynomial) -> int:
    if p.ring != RING_2ROW:
        raise RingMismatchError(f"expected ring {RING_2ROW.variables!r}")
    if p.is_zero():
        return 0
    fact = factorial_table(p.degree("x"))
    return sum(c * fact[e[0]] for e, c in p._terms.items())


def umbral_eval_3row(p: WeightPolynomial, n: int) -> int:
    if p.ring != RING_3ROW:
        raise RingMismatchError(f"expected ring {RING_3ROW.variables!r}")
    fact = factorial_table(max(n, 0))
    total = 0
    for (a1, a2, a3, a23), c in p._terms.items():
        if a23 > n - a1:
            continue
        total += c * binomial(n - a1, a23) * fact[a23] * fact[a2] * fact[a3]
    return total


def umbral_eval_trapezoid(p: WeightPolynomial, n: int) -> int:
    if p.ring != RING_3ROW:
        raise RingMismatchError(f"expected ring {RING_3ROW.variables!r}")
    fact = factorial_table(max(n + 2, 0))
    total = 0
    for (a1, a2, a3, a23), c in p._terms.items():
        if a23 > n - a1:
            continue
        total += (
            c
            * binomial(n - a1, a23)
            * fact[a23]
            * fact[a2 + 1]
            * (fact[a3 + 2] // 2)
        )
    return total


def umbral_eval(kind: UmbralKind, p: WeightPolynomial, n: int) -> int:
    if kind is UmbralKind.TWO_ROW:
        return umbral_eval_2row(p)
    if kind is UmbralKind.THREE_ROW_RECTANGLE:
        return umbral_eval_3row(p, n)
    if kind is UmbralKind.THREE_ROW_TRAPEZOID:
        return umbral_eval_trapezoid(p, n)
    raise ValueError(f"unknown umbral kind {kind!r}")
