"""Umbral operators: hand-computed monomial images, linearity, and
agreement with direct injection counting on tiny boards."""

from __future__ import annotations

import math
import random

import pytest

from latinrect.poly import RING_2ROW, RING_3ROW
from latinrect.umbra import (
    UmbralKind,
    binomial,
    factorial_table,
    umbral_eval,
    umbral_eval_2row,
    umbral_eval_3row,
    umbral_eval_trapezoid,
)

X = RING_2ROW.var("x")
X1, X2, X3, X23 = (RING_3ROW.var(v) for v in ("x1", "x2", "x3", "x23"))


def rand_poly(ring, rng, deg=3, terms=5):
    out = ring.zero()
    for _ in range(terms):
        exps = tuple(rng.randrange(deg + 1) for _ in ring.variables)
        out = out + ring.poly({exps: rng.randrange(-9, 10)})
    return out


class TestHelpers:
    def test_factorial_table(self):
        assert factorial_table(5) == (1, 1, 2, 6, 24, 120)

    def test_binomial(self):
        assert binomial(5, 2) == 10
        assert binomial(3, 0) == 1
        assert binomial(2, 3) == 0
        assert binomial(-1, 0) == 0


class TestTwoRow:
    def test_monomials_to_factorials(self):
        for k in range(6):
            assert umbral_eval_2row(X**k) == math.factorial(k)

    def test_derangement_polynomial(self):
        # (x-1)^n evaluates to the n-th derangement number
        for n, want in enumerate([1, 0, 1, 2, 9, 44, 265], start=0):
            assert umbral_eval_2row((X - 1) ** n) == want

    def test_wrong_ring_rejected(self):
        with pytest.raises(Exception):
            umbral_eval_2row(X1)


class TestThreeRow:
    def test_monomial_images(self):
        # x1^a1 x2^a2 x3^a3 x23^a23 -> C(n-a1, a23) a23! a2! a3!
        assert umbral_eval_3row(RING_3ROW.one(), 4) == 1
        assert umbral_eval_3row(X2**3, 4) == 6
        assert umbral_eval_3row(X3**2 * X2, 4) == 2
        assert umbral_eval_3row(X23, 2) == 2
        assert umbral_eval_3row(X1 * X23, 2) == 1
        assert umbral_eval_3row(X1**2 * X23, 2) == 0
        assert umbral_eval_3row(X23**2, 4) == 12  # C(4,2) * 2!

    def test_free_board_total(self):
        # empty spec: P_n = (x2 x3)^n, rows 1 and 2 each a free permutation
        for n in range(5):
            assert umbral_eval_3row((X2 * X3) ** n, n) == math.factorial(n) ** 2

    def test_n_independent_except_x1_x23(self):
        # only the C(n-a1, a23) factor sees n
        assert umbral_eval_3row(X2**2 * X3, 4) == umbral_eval_3row(X2**2 * X3, 9)
        assert umbral_eval_3row(X1 * X23, 4) != umbral_eval_3row(X1 * X23, 9)


class TestTrapezoid:
    def test_monomial_images(self):
        # x3^a3 picks up (a3+2)!/2!: row 2 is two cells shorter
        assert umbral_eval_trapezoid(X3, 5) == 3
        assert umbral_eval_trapezoid(X3**2, 5) == 12
        assert umbral_eval_trapezoid(X2, 5) == 2
        assert umbral_eval_trapezoid(RING_3ROW.one(), 5) == 1
        assert umbral_eval_trapezoid(X1 * X23, 3) == 2  # C(2,1) * 1!

    def test_reduces_to_3row_shape(self):
        # with no x2/x3/x23 content the two operators coincide
        assert umbral_eval_trapezoid(X1**2, 7) == umbral_eval_3row(X1**2, 7)


class TestLinearity:
    @pytest.mark.parametrize("kind,n", [
        (UmbralKind.TWO_ROW, 0),
        (UmbralKind.THREE_ROW_RECTANGLE, 5),
        (UmbralKind.THREE_ROW_TRAPEZOID, 6),
    ])
    def test_additive_and_scalar(self, kind, n):
        ring = RING_2ROW if kind is UmbralKind.TWO_ROW else RING_3ROW
        rng = random.Random(hash(kind.value) & 0xFFFF)
        for _ in range(20):
            p = rand_poly(ring, rng)
            q = rand_poly(ring, rng)
            c = rng.randrange(-6, 7)
            assert umbral_eval(kind, p + q, n) == \
                umbral_eval(kind, p, n) + umbral_eval(kind, q, n)
            assert umbral_eval(kind, c * p, n) == c * umbral_eval(kind, p, n)

    def test_dispatcher_matches_direct(self):
        p = (X - 1) ** 4
        assert umbral_eval(UmbralKind.TWO_ROW, p, 4) == umbral_eval_2row(p)
        q = X2 * X3 - X23
        assert umbral_eval(UmbralKind.THREE_ROW_RECTANGLE, q, 3) == \
            umbral_eval_3row(q, 3)
        assert umbral_eval(UmbralKind.THREE_ROW_TRAPEZOID, q, 3) == \
            umbral_eval_trapezoid(q, 3)
