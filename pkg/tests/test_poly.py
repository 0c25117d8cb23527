"""Ring arithmetic, exact division, the fraction-free solver, and
rational kernels.  Solver results are checked against an independent
Fraction-based elimination on randomized integer systems."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from latinrect.poly import (
    RING_2ROW,
    RING_3ROW,
    RING_KERNEL,
    PolynomialDivisionError,
    PolyRing,
    RationalKernel,
    RingMismatchError,
    SingularSystemError,
    WeightPolynomial,
    bareiss_determinant,
    exact_divide,
    solve_linear_system,
)

X = RING_2ROW.var("x")


def rand_poly(ring: PolyRing, rng: random.Random, deg: int = 3, terms: int = 4):
    out = ring.zero()
    for _ in range(terms):
        exps = tuple(rng.randrange(deg + 1) for _ in ring.variables)
        out = out + ring.poly({exps: rng.randrange(-9, 10)})
    return out


class TestRing:
    def test_variables_frozen_and_indexed(self):
        assert RING_3ROW.variables == ("x1", "x2", "x3", "x23")
        assert RING_3ROW.index("x23") == 3
        with pytest.raises(RingMismatchError):
            RING_3ROW.index("y")

    def test_duplicate_variable_rejected(self):
        with pytest.raises(ValueError):
            PolyRing(("x", "x"))

    def test_constructors(self):
        assert RING_2ROW.zero().is_zero()
        assert RING_2ROW.one().is_one()
        assert RING_2ROW.const(0).is_zero()
        assert RING_2ROW.const(7).constant_term() == 7
        assert RING_2ROW.var("x").degree("x") == 1

    def test_cross_ring_operations_rejected(self):
        with pytest.raises(RingMismatchError):
            RING_2ROW.var("x") + RING_3ROW.var("x1")


class TestArithmetic:
    def test_binomial_square(self):
        assert (X + 1) ** 2 == X**2 + 2 * X + 1
        assert (X - 1) * (X + 1) == X**2 - 1

    def test_int_mixing(self):
        assert 1 + X == X + 1
        assert 2 - X == -(X - 2)
        assert 3 * X == X * 3

    def test_zero_terms_dropped(self):
        p = X - X
        assert p.is_zero() and len(p) == 0

    def test_ring_axioms_randomized(self):
        rng = random.Random(20260816)
        for _ in range(40):
            a = rand_poly(RING_3ROW, rng)
            b = rand_poly(RING_3ROW, rng)
            c = rand_poly(RING_3ROW, rng)
            assert (a + b) * c == a * c + b * c
            assert a * b == b * a
            assert (a * b) * c == a * (b * c)
            assert a + (b + c) == (a + b) + c

    def test_pow(self):
        assert X**0 == RING_2ROW.one()
        assert (X - 1) ** 3 == X**3 - 3 * X**2 + 3 * X - 1
        with pytest.raises(ValueError):
            X ** (-1)

    def test_evaluate(self):
        p = X**2 - 3 * X + 1
        assert p.evaluate({"x": 5}) == 11
        q = RING_3ROW.var("x1") * RING_3ROW.var("x23") + 2
        assert q.evaluate({"x1": 3, "x2": 0, "x3": 0, "x23": 4}) == 14

    def test_content_and_leading(self):
        p = 6 * X**2 - 4 * X
        assert p.content() == 2
        exps, coeff = p.leading()
        assert exps == (2,) and coeff == 6


class TestCanonicalStr:
    def test_descending_lex(self):
        assert (X**2 - 3 * X + 1).canonical_str() == "x^2 - 3*x + 1"
        assert RING_2ROW.zero().canonical_str() == "0"
        assert RING_2ROW.const(-5).canonical_str() == "-5"

    def test_multivariate(self):
        r = RING_3ROW
        p = r.var("x2") * r.var("x3") - r.var("x23") + 2 * r.var("x1")
        assert p.canonical_str() == "2*x1 + x2*x3 - x23"


class TestExactDivide:
    def test_product_roundtrip_randomized(self):
        rng = random.Random(977)
        for _ in range(30):
            a = rand_poly(RING_3ROW, rng)
            b = rand_poly(RING_3ROW, rng)
            if b.is_zero():
                continue
            assert exact_divide(a * b, b) == a

    def test_non_divisible_raises(self):
        with pytest.raises(PolynomialDivisionError):
            exact_divide(X + 1, X)

    def test_divide_by_zero_raises(self):
        with pytest.raises(PolynomialDivisionError):
            exact_divide(X, RING_2ROW.zero())


def frac_solve(rows: list[list[int]], rhs: list[int]) -> list[Fraction] | None:
    """Reference Gaussian elimination over Q; None if singular."""
    n = len(rows)
    m = [[Fraction(v) for v in row] + [Fraction(rhs[i])] for i, row in enumerate(rows)]
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c]), None)
        if piv is None:
            return None
        m[c], m[piv] = m[piv], m[c]
        for r in range(n):
            if r != c and m[r][c]:
                f = m[r][c] / m[c][c]
                m[r] = [a - f * b for a, b in zip(m[r], m[c])]
    return [m[i][n] / m[i][i] for i in range(n)]


class TestSolver:
    def test_determinant_vs_fractions(self):
        rng = random.Random(4242)
        for _ in range(60):
            n = rng.randrange(1, 6)
            rows = [[rng.randrange(-5, 6) for _ in range(n)] for _ in range(n)]
            mat = [[RING_2ROW.const(v) for v in row] for row in rows]
            det = bareiss_determinant(mat).constant_term()
            ref = frac_det(rows)
            assert det == ref

    def test_solver_vs_fractions(self):
        rng = random.Random(31337)
        solved = 0
        while solved < 40:
            n = rng.randrange(1, 6)
            rows = [[rng.randrange(-5, 6) for _ in range(n)] for _ in range(n)]
            rhs = [rng.randrange(-5, 6) for _ in range(n)]
            ref = frac_solve(rows, rhs)
            mat = [[RING_2ROW.const(v) for v in row] for row in rows]
            vec = [RING_2ROW.const(v) for v in rhs]
            if ref is None:
                with pytest.raises(SingularSystemError):
                    solve_linear_system(mat, vec)
                continue
            sol = solve_linear_system(mat, vec)
            for (num, den), want in zip(sol, ref):
                got = Fraction(num.constant_term(), den.constant_term())
                assert got == want
            solved += 1

    def test_polynomial_system(self):
        # [[x, 1], [1, x]] u = [1, 0]  =>  u0 = x/(x^2-1), u1 = -1/(x^2-1)
        mat = [[X, RING_2ROW.one()], [RING_2ROW.one(), X]]
        rhs = [RING_2ROW.one(), RING_2ROW.zero()]
        (n0, d0), (n1, d1) = solve_linear_system(mat, rhs)
        assert n0 * (X**2 - 1) == X * d0
        assert n1 * (X**2 - 1) == -d1

    def test_components_subset(self):
        mat = [[RING_2ROW.const(2), RING_2ROW.const(0)],
               [RING_2ROW.const(0), RING_2ROW.const(4)]]
        rhs = [RING_2ROW.const(6), RING_2ROW.const(8)]
        (num, den), = solve_linear_system(mat, rhs, components=(1,))
        assert num.constant_term() * 1 == 2 * den.constant_term()


def frac_det(rows: list[list[int]]) -> int:
    n = len(rows)
    m = [[Fraction(v) for v in row] for row in rows]
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c]), None)
        if piv is None:
            return 0
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] / m[c][c]
            m[r] = [a - f * b for a, b in zip(m[r], m[c])]
    return int(det)


class TestRationalKernel:
    def geometric(self) -> RationalKernel:
        # 1 / (1 - (x-1) X): series coefficient n is (x-1)^n
        one = RING_2ROW.one()
        return RationalKernel(RING_2ROW, "X", (one,), (one, -(X - 1)))

    def test_series_geometric(self):
        ser = self.geometric().series(6)
        for n, p in enumerate(ser):
            assert p == (X - 1) ** n

    def test_normalized(self):
        k = self.geometric()
        assert k.normalized
        k2 = RationalKernel(RING_2ROW, "X", (RING_2ROW.const(2),),
                            (RING_2ROW.const(2), -2 * (X - 1)))
        assert k2.normalized  # common content removed on construction
        assert k2 == k

    def test_eq_by_cross_multiplication(self):
        k = self.geometric()
        num = (RING_2ROW.one() + X) * RING_2ROW.one()
        den_parts = (num, -(X - 1) * num)
        scaled = RationalKernel(RING_2ROW, "X", (num,), den_parts)
        assert scaled == k

    def test_order_and_str(self):
        k = self.geometric()
        assert k.order() == (0, 1)
        assert k.canonical_str() == "(1) / (1 + (-x + 1)*X)"

    def test_bivariate_roundtrip(self):
        k = self.geometric()
        num, den = k.to_bivariate()
        assert RationalKernel.from_bivariate(num, den, "X") == k

    def test_zero_denominator_rejected(self):
        with pytest.raises(ZeroDivisionError):
            RationalKernel(RING_2ROW, "X", (RING_2ROW.one(),), ())
