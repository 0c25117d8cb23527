"""Exact sparse multivariate polynomials over the integers.

A polynomial is a dict from exponent vectors to nonzero integer
coefficients.  Exponent vectors are plain tuples aligned with the
variable list of a ring descriptor, so in the ring ("x",) the term
3*x^2 is stored as {(2,): 3}.  Coefficients are Python ints, hence
exact at any size.  Zero coefficients are dropped on construction and
never stored.

The module also carries the fraction-free linear algebra used to turn
a transfer-matrix system into a rational generating function: a
one-step fraction-free Gauss-Jordan solver (all divisions exact, no
fractions ever materialize) and a RationalKernel wrapper that expands
num/den into a weight-polynomial series via the induced linear
recurrence.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence


class RingMismatchError(ValueError):
    """Two operands live in different polynomial rings."""


class PolynomialDivisionError(ArithmeticError):
    """A division that was promised to be exact is not."""


class SingularSystemError(ArithmeticError):
    """The transfer system has no unique solution; upstream bug."""


@dataclass(frozen=True)
class PolyRing:
    """An ordered list of variable names; nothing more.

    Ring identity is by value, so two independently built descriptors
    with the same variables are the same ring.
    """

    variables: tuple[str, ...]

    def __post_init__(self) -> None:
        if len(set(self.variables)) != len(self.variables):
            raise ValueError(f"duplicate variable names: {self.variables!r}")
        if not all(isinstance(v, str) and v for v in self.variables):
            raise ValueError(f"bad variable names: {self.variables!r}")

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def zero(self) -> "WeightPolynomial":
        return WeightPolynomial(self, {})

    def one(self) -> "WeightPolynomial":
        return self.const(1)

    def const(self, c: int) -> "WeightPolynomial":
        return WeightPolynomial(self, {(0,) * self.nvars: int(c)})

    def var(self, name: str) -> "WeightPolynomial":
        exps = [0] * self.nvars
        exps[self.index(name)] = 1
        return WeightPolynomial(self, {tuple(exps): 1})

    def index(self, name: str) -> int:
        try:
            return self.variables.index(name)
        except ValueError:
            raise RingMismatchError(f"no variable {name!r} in ring {self.variables!r}") from None

    def poly(self, terms: Mapping[tuple[int, ...], int]) -> "WeightPolynomial":
        return WeightPolynomial(self, dict(terms))


#: the three rings the package actually uses
RING_2ROW = PolyRing(("x",))
RING_3ROW = PolyRing(("x1", "x2", "x3", "x23"))
RING_KERNEL = PolyRing(("x", "X"))


class WeightPolynomial:
    """Immutable sparse polynomial with integer coefficients."""

    __slots__ = ("ring", "_terms", "_hash")

    def __init__(self, ring: PolyRing, terms: Mapping[tuple[int, ...], int]):
        clean: dict[tuple[int, ...], int] = {}
        nv = ring.nvars
        for exps, c in terms.items():
            if c == 0:
                continue
            if len(exps) != nv or any(e < 0 for e in exps):
                raise ValueError(f"bad exponent vector {exps!r} for ring {ring.variables!r}")
            clean[exps] = c
        self.ring = ring
        self._terms = clean
        self._hash: int | None = None

    # -- inspection ----------------------------------------------------

    def terms(self) -> list[tuple[tuple[int, ...], int]]:
        """Terms in descending lex order of exponent vectors."""
        return sorted(self._terms.items(), reverse=True)

    def coefficient(self, exps: tuple[int, ...]) -> int:
        return self._terms.get(exps, 0)

    def constant_term(self) -> int:
        return self._terms.get((0,) * self.ring.nvars, 0)

    def is_zero(self) -> bool:
        return not self._terms

    def is_one(self) -> bool:
        return self._terms == {(0,) * self.ring.nvars: 1}

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def total_degree(self) -> int:
        if not self._terms:
            return -1
        return max(sum(e) for e in self._terms)

    def degree(self, name: str) -> int:
        if not self._terms:
            return -1
        i = self.ring.index(name)
        return max(e[i] for e in self._terms)

    def leading(self) -> tuple[tuple[int, ...], int]:
        """(exponents, coefficient) of the lex-largest term."""
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self._terms)
        return e, self._terms[e]

    def content(self) -> int:
        """gcd of the coefficients, 0 for the zero polynomial."""
        g = 0
        for c in self._terms.values():
            g = math.gcd(g, c)
        return g

    # -- arithmetic ----------------------------------------------------

    def _check(self, other: "WeightPolynomial") -> None:
        if self.ring != other.ring:
            raise RingMismatchError(
                f"ring mismatch: {self.ring.variables!r} vs {other.ring.variables!r}"
            )

    def __add__(self, other: "WeightPolynomial | int") -> "WeightPolynomial":
        if isinstance(other, int):
            other = self.ring.const(other)
        self._check(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return WeightPolynomial(self.ring, out)

    def __radd__(self, other: int) -> "WeightPolynomial":
        return self.__add__(other)

    def __neg__(self) -> "WeightPolynomial":
        return WeightPolynomial(self.ring, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other: "WeightPolynomial | int") -> "WeightPolynomial":
        if isinstance(other, int):
            other = self.ring.const(other)
        return self.__add__(other.__neg__())

    def __rsub__(self, other: int) -> "WeightPolynomial":
        return self.ring.const(other).__sub__(self)

    def __mul__(self, other: "WeightPolynomial | int") -> "WeightPolynomial":
        if isinstance(other, int):
            if other == 0:
                return self.ring.zero()
            return WeightPolynomial(self.ring, {e: c * other for e, c in self._terms.items()})
        self._check(other)
        out: dict[tuple[int, ...], int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return WeightPolynomial(self.ring, out)

    def __rmul__(self, other: int) -> "WeightPolynomial":
        return self.__mul__(other)

    def __pow__(self, k: int) -> "WeightPolynomial":
        if k < 0:
            raise ValueError("negative power of a polynomial")
        out = self.ring.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            return self._terms == self.ring.const(other)._terms
        if not isinstance(other, WeightPolynomial):
            return NotImplemented
        return self.ring == other.ring and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._terms.items())))
        return self._hash

    def evaluate(self, values: Mapping[str, int]) -> int:
        """Exact integer evaluation; every variable must be given."""
        point = [values[v] for v in self.ring.variables]
        total = 0
        for e, c in self._terms.items():
            t = c
            for base, exp in zip(point, e):
                if exp:
                    t *= base**exp
            total += t
        return total

    # -- rendering -----------------------------------------------------

    def canonical_str(self) -> str:
        if not self._terms:
            return "0"
        names = self.ring.variables
        parts: list[str] = []
        for exps, c in self.terms():
            factors = []
            for name, e in zip(names, exps):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            if not factors:
                body = str(abs(c))
            else:
                body = "*".join(factors)
                if abs(c) != 1:
                    body = f"{abs(c)}*{body}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"<poly {self.canonical_str()}>"


def exact_divide(num: WeightPolynomial, den: WeightPolynomial) -> WeightPolynomial:
    """Quotient num/den when den divides num exactly, else raise.

    Plain lex reduction: repeatedly cancel the leading term of the
    remainder against the leading term of den.  Exactness means the
    remainder hits zero and every coefficient quotient is integral.
    """
    if den.is_zero():
        raise PolynomialDivisionError("division by the zero polynomial")
    if num.is_zero():
        return num.ring.zero()
    num._check(den)
    de, dc = den.leading()
    rem = dict(num._terms)
    quot: dict[tuple[int, ...], int] = {}
    while rem:
        re = max(rem)
        rc = rem[re]
        qe = tuple(a - b for a, b in zip(re, de))
        if any(e < 0 for e in qe) or rc % dc != 0:
            raise PolynomialDivisionError(
                f"({num.canonical_str()}) is not divisible by ({den.canonical_str()})"
            )
        qc = rc // dc
        quot[qe] = qc
        for e, c in den._terms.items():
            t = tuple(a + b for a, b in zip(qe, e))
            v = rem.get(t, 0) - qc * c
            if v:
                rem[t] = v
            else:
                rem.pop(t, None)
    return WeightPolynomial(num.ring, quot)


def bareiss_determinant(matrix: Sequence[Sequence[WeightPolynomial]]) -> WeightPolynomial:
    """Exact determinant by fraction-free elimination.

    Every intermediate entry is a minor of the input, and each
    division by the previous pivot is exact; a failed division would
    signal corruption, so it raises instead of rounding.
    """
    n = len(matrix)
    if n == 0:
        raise ValueError("empty matrix")
    ring = matrix[0][0].ring
    m = [list(row) for row in matrix]
    prev = ring.one()
    sign = 1
    for k in range(n - 1):
        # pivot on the sparsest eligible row; fill-in, not correctness
        piv = None
        best = None
        for r in range(k, n):
            if m[r][k].is_zero():
                continue
            weight = (len(m[r][k]), sum(len(e) for e in m[r][k:]))
            if best is None or weight < best:
                best = weight
                piv = r
        if piv is None:
            return ring.zero()
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            sign = -sign
        pivot = m[k][k]
        for i in range(k + 1, n):
            fac = m[i][k]
            row_i, row_k = m[i], m[k]
            for j in range(k + 1, n):
                row_i[j] = exact_divide(pivot * row_i[j] - fac * row_k[j], prev)
            row_i[k] = ring.zero()
        prev = pivot
    det = m[n - 1][n - 1]
    return det if sign == 1 else -det


def solve_linear_system(
    matrix: Sequence[Sequence[WeightPolynomial]],
    rhs: Sequence[WeightPolynomial],
    components: Sequence[int] | None = None,
) -> list[tuple[WeightPolynomial, WeightPolynomial]]:
    """Solve A*g = rhs exactly over a polynomial ring.

    Cramer's rule on fraction-free determinants: component i comes
    back as the pair (det of A with column i replaced by rhs, det A).
    The pairs are exact but not reduced to lowest terms.  Passing
    `components` restricts the work to those unknowns; the returned
    list follows the requested order.
    """
    n = len(matrix)
    if n == 0:
        return []
    det = bareiss_determinant(matrix)
    if det.is_zero():
        raise SingularSystemError("transfer system is singular")
    wanted = range(n) if components is None else components
    out = []
    for i in wanted:
        replaced = [
            [rhs[r] if c == i else matrix[r][c] for c in range(n)] for r in range(n)
        ]
        out.append((bareiss_determinant(replaced), det))
    return out


class RationalKernel:
    """A rational function num/den, viewed as a power series in one
    distinguished variable whose coefficients are polynomials in the
    remaining ones.

    Stored split by the series variable: num[j] and den[j] are the
    coefficient polynomials of series_var^j.  Normalized so the parts
    have integer content 1 jointly and den[0] has positive leading
    sign; for transfer kernels den[0] is then literally 1.
    """

    __slots__ = ("ring", "series_var", "num", "den")

    def __init__(
        self,
        ring: PolyRing,
        series_var: str,
        num: Sequence[WeightPolynomial],
        den: Sequence[WeightPolynomial],
    ):
        num = _trim(list(num), ring)
        den = _trim(list(den), ring)
        if not den:
            raise ZeroDivisionError("kernel with zero denominator")
        g = 0
        for p in (*num, *den):
            g = math.gcd(g, p.content())
        if g > 1:
            num = [exact_divide(p, ring.const(g)) for p in num]
            den = [exact_divide(p, ring.const(g)) for p in den]
        lead = next(p for p in den if not p.is_zero())
        if lead.leading()[1] < 0:
            num = [-p for p in num]
            den = [-p for p in den]
        self.ring = ring
        self.series_var = series_var
        self.num = tuple(num)
        self.den = tuple(den)

    @classmethod
    def from_bivariate(
        cls, num: WeightPolynomial, den: WeightPolynomial, series_var: str
    ) -> "RationalKernel":
        """Split joint polynomials in (coeff vars + series var) apart."""
        ring = num.ring
        sv = ring.index(series_var)
        keep = tuple(v for v in ring.variables if v != series_var)
        small = PolyRing(keep)

        def split(p: WeightPolynomial) -> list[WeightPolynomial]:
            buckets: dict[int, dict[tuple[int, ...], int]] = {}
            for e, c in p._terms.items():
                rest = tuple(x for i, x in enumerate(e) if i != sv)
                buckets.setdefault(e[sv], {})[rest] = c
            if not buckets:
                return []
            return [
                WeightPolynomial(small, buckets.get(j, {}))
                for j in range(max(buckets) + 1)
            ]

        return cls(small, series_var, split(num), split(den))

    @property
    def normalized(self) -> bool:
        return bool(self.den) and self.den[0].is_one()

    def order(self) -> tuple[int, int]:
        """(numerator degree, denominator degree) in the series variable."""
        return len(self.num) - 1, len(self.den) - 1

    def to_bivariate(self) -> tuple[WeightPolynomial, WeightPolynomial]:
        big = PolyRing(self.ring.variables + (self.series_var,))

        def join(parts: Sequence[WeightPolynomial]) -> WeightPolynomial:
            terms: dict[tuple[int, ...], int] = {}
            for j, p in enumerate(parts):
                for e, c in p._terms.items():
                    terms[e + (j,)] = c
            return WeightPolynomial(big, terms)

        return join(self.num), join(self.den)

    def series(self, n_max: int) -> list[WeightPolynomial]:
        """Coefficients of series_var^0..n_max as polynomials.

        Uses the linear recurrence den[0]*P_n = num[n] - sum_{j>=1}
        den[j]*P_{n-j}; every division by den[0] must be exact.
        """
        d0 = self.den[0]
        if d0.is_zero():
            raise ZeroDivisionError("denominator has no constant term in the series variable")
        out: list[WeightPolynomial] = []
        for n in range(n_max + 1):
            acc = self.num[n] if n < len(self.num) else self.ring.zero()
            for j in range(1, min(n, len(self.den) - 1) + 1):
                acc = acc - self.den[j] * out[n - j]
            out.append(acc if d0.is_one() else exact_divide(acc, d0))
        return out

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RationalKernel):
            return NotImplemented
        if self.ring != other.ring or self.series_var != other.series_var:
            return False
        n1, d1 = self.to_bivariate()
        n2, d2 = other.to_bivariate()
        return n1 * d2 == n2 * d1

    def __hash__(self) -> int:
        return hash((self.ring, self.series_var, self.num, self.den))

    def canonical_str(self) -> str:
        return f"({_series_str(self.num, self.series_var)}) / ({_series_str(self.den, self.series_var)})"

    def __repr__(self) -> str:
        return f"<kernel {self.canonical_str()}>"


def _trim(parts: list[WeightPolynomial], ring: PolyRing) -> list[WeightPolynomial]:
    while parts and parts[-1].is_zero():
        parts.pop()
    return parts


def _series_str(parts: Sequence[WeightPolynomial], var: str) -> str:
    chunks: list[str] = []
    for j, p in enumerate(parts):
        if p.is_zero():
            continue
        if j == 0:
            chunks.append(p.canonical_str())
            continue
        xpow = var if j == 1 else f"{var}^{j}"
        if p.is_one():
            body = xpow
        elif len(p) == 1 and not any(sum(e) for e in p._terms):
            c = p.constant_term()
            body = f"{c}*{xpow}" if c > 0 else f"({c})*{xpow}"
        else:
            body = f"({p.canonical_str()})*{xpow}"
        chunks.append(body)
    if not chunks:
        return "0"
    return " + ".join(chunks)
