"""Dense rational polynomials, the P_n/Q_n recurrence pair, and terminating
Gauss hypergeometric polynomials."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import DomainError, NonTerminating, PochhammerPole
from .series import QSeries, as_rational

__all__ = [
    "RationalPolynomial",
    "HypergeomParams",
    "lambda_n",
    "pq_polys",
    "hypergeom_poly",
    "poly_eval_qs",
    "wronskian",
]


class RationalPolynomial:
    """Immutable univariate polynomial; ``coeffs[i]`` multiplies ``x^i``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        c = [as_rational(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(c)

    @classmethod
    def x(cls) -> "RationalPolynomial":
        return cls([0, 1])

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading_coefficient(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __getitem__(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def __eq__(self, other):
        if isinstance(other, RationalPolynomial):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other: "RationalPolynomial") -> "RationalPolynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        return RationalPolynomial(self[i] + other[i] for i in range(n))

    def __neg__(self) -> "RationalPolynomial":
        return RationalPolynomial(-c for c in self.coeffs)

    def __sub__(self, other: "RationalPolynomial") -> "RationalPolynomial":
        return self + (-other)

    def __mul__(self, other) -> "RationalPolynomial":
        if not isinstance(other, RationalPolynomial):
            r = as_rational(other)
            return RationalPolynomial(c * r for c in self.coeffs)
        if self.is_zero() or other.is_zero():
            return RationalPolynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return RationalPolynomial(out)

    __rmul__ = __mul__

    def shift_x(self) -> "RationalPolynomial":
        """Multiply by ``x``."""
        return RationalPolynomial((0,) + self.coeffs) if self.coeffs else self

    def reflect(self) -> "RationalPolynomial":
        """``p(-x)``."""
        return RationalPolynomial(c if i % 2 == 0 else -c for i, c in enumerate(self.coeffs))

    def parity(self):
        """0 if even, 1 if odd, None if mixed; the zero polynomial counts as both (0)."""
        degs = {i % 2 for i, c in enumerate(self.coeffs) if c}
        if len(degs) > 1:
            return None
        return degs.pop() if degs else 0

    def __call__(self, x):
        x = as_rational(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __repr__(self):
        return f"RationalPolynomial({self})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            mag = abs(c)
            if i == 0:
                body = str(mag)
            else:
                mono = "x" if i == 1 else f"x^{i}"
                body = mono if mag == 1 else f"{mag}{mono}" if mag.denominator == 1 else f"({mag}){mono}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(("+ " if c > 0 else "- ") + body)
        return " ".join(parts)


def lambda_n(n: int) -> Fraction:
    """Recursion coefficient ``4 (4n+1)(4n+3) / (n(n+1))``."""
    if n < 1:
        raise DomainError(f"lambda_n needs n >= 1, got {n}")
    return Fraction(4 * (4 * n + 1) * (4 * n + 3), n * (n + 1))


@lru_cache(maxsize=None)
def _pq_table(n: int) -> tuple:
    if n == 0:
        return ((RationalPolynomial([1]), RationalPolynomial()),)
    if n == 1:
        return _pq_table(0) + ((RationalPolynomial.x(), RationalPolynomial([1])),)
    prev = _pq_table(n - 1)
    (p1, q1), (p0, q0) = prev[-1], prev[-2]
    lam = lambda_n(n - 1)
    return prev + ((p1.shift_x() + p0 * lam, q1.shift_x() + q0 * lam),)


def pq_polys(n: int) -> tuple[RationalPolynomial, RationalPolynomial]:
    """``(P_n, Q_n)`` from ``X_{n+1} = x X_n + lambda_n X_{n-1}``.

    Initial values are ``P_0 = 1, P_1 = x`` and ``Q_0 = 0, Q_1 = 1``.
    """
    if n < 0:
        raise DomainError(f"n must be non-negative, got {n}")
    return _pq_table(n)[n]


def wronskian(n: int) -> RationalPolynomial:
    """``P_{n+1} Q_n - P_n Q_{n+1}``."""
    p0, q0 = pq_polys(n)
    p1, q1 = pq_polys(n + 1)
    return p1 * q0 - p0 * q1


@dataclass(frozen=True)
class HypergeomParams:
    a: Fraction
    b: Fraction
    c: Fraction

    def __post_init__(self):
        for name in ("a", "b", "c"):
            object.__setattr__(self, name, as_rational(getattr(self, name)))

    def terminating_degree(self):
        """Smallest ``N`` with ``(a)_{N+1} = 0`` or ``(b)_{N+1} = 0``; None if none."""
        cands = [-v.numerator for v in (self.a, self.b) if v.denominator == 1 and v <= 0]
        return min(cands) if cands else None


def hypergeom_poly(p: HypergeomParams) -> RationalPolynomial:
    """``sum_m (a)_m (b)_m / ((c)_m m!) x^m`` for a terminating series."""
    deg = p.terminating_degree()
    if deg is None:
        raise NonTerminating(f"neither a={p.a} nor b={p.b} is a non-positive integer")
    coeffs = [Fraction(1)]
    term = Fraction(1)
    for m in range(deg):
        if p.c + m == 0:
            raise PochhammerPole(f"(c)_{m + 1} vanishes for c={p.c}")
        term = term * (p.a + m) * (p.b + m) / ((p.c + m) * (m + 1))
        coeffs.append(term)
    return RationalPolynomial(coeffs)


def poly_eval_qs(p: RationalPolynomial, f: QSeries) -> QSeries:
    """Horner evaluation of ``p`` at a q-series."""
    if p.is_zero():
        return QSeries.zero(f.prec)
    acc = QSeries.constant(p.coeffs[-1], f.prec)
    for c in reversed(p.coeffs[:-1]):
        acc = acc * f + c
    return acc


def homogeneous_eval(p: RationalPolynomial, total: int, x: Sequence[QSeries], y: Sequence[QSeries]) -> QSeries:
    """``sum_i p_i x^i y^((total - i)/2)`` given power tables ``x[i]``, ``y[j]``.

    This is ``s^total p(x/s)`` with ``s^2 = y``; every monomial must have
    ``total - i`` even, which is the parity condition that removes the root.
    """
    acc = None
    for i, c in enumerate(p.coeffs):
        if not c:
            continue
        if (total - i) % 2:
            raise DomainError(f"x^{i} has the wrong parity for total degree {total}")
        term = x[i] * y[(total - i) // 2] * c
        acc = term if acc is None else acc + term
    if acc is None:
        return QSeries.zero(min(x[0].prec, y[0].prec))
    return acc
