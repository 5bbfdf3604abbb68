"""The hypergeometric-type equations

    f'' - ((k+1)/h) E f' + (k(k+1)/(2h)) E' f = 0,     ' = q d/dq,

for ``(h, E) = (4, E2A)`` (Fricke level 2) and ``(6, E2)`` (level one),
their Serre-type derivative, the quasimodular solutions ``F_k`` and a
Frobenius solver.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Union

from .errors import DomainError, NotAnIndicialRoot, PrecisionExceeded
from .forms import FormName, get_form
from .polys import HypergeomParams, homogeneous_eval, hypergeom_poly, lambda_n, poly_eval_qs, pq_polys
from .series import EqualityCertificate, QSeries, as_rational

__all__ = [
    "ODEFamily",
    "TWO_A",
    "SL2Z",
    "family_by_name",
    "WeightedSeries",
    "theta_k",
    "ode_residual",
    "sharp_prime_residual",
    "fk_closed_form",
    "build_Fk",
    "clear_caches",
    "fk_recurrence_defect",
    "key_lemma_check",
    "FrobeniusStatus",
    "FrobeniusReport",
    "indicial_roots",
    "frobenius_solve",
    "hypergeometric_solution",
]


@dataclass(frozen=True)
class ODEFamily:
    label: str
    h: int
    e_series: FormName

    def coefficients(self, k) -> tuple[Fraction, Fraction]:
        """``((k+1)/h, k(k+1)/(2h))``."""
        k = as_rational(k)
        return (k + 1) / self.h, k * (k + 1) / (2 * self.h)


TWO_A = ODEFamily("TWO_A", 4, FormName.E2A)
SL2Z = ODEFamily("SL2Z", 6, FormName.E2)

_FAMILY_ALIASES = {"2A": TWO_A, "TWO_A": TWO_A, "SL2Z": SL2Z, "SL2": SL2Z}


def family_by_name(name: str) -> ODEFamily:
    try:
        return _FAMILY_ALIASES[name.upper()]
    except KeyError:
        raise DomainError(f"unknown ODE family {name!r}; use 2A or SL2Z") from None


@dataclass(frozen=True)
class WeightedSeries:
    series: QSeries
    weight: Fraction

    def __post_init__(self):
        object.__setattr__(self, "weight", as_rational(self.weight))


def _e_for(family: ODEFamily, f: QSeries) -> QSeries:
    v = f.valuation()
    lo = f.ord if v is None else v
    return get_form(family.e_series, max(f.prec - min(lo, 0), 1))


def theta_k(f: WeightedSeries, family: ODEFamily = TWO_A) -> WeightedSeries:
    """``f' - (k/(2h)) E f``; raises the weight by 2."""
    k = f.weight
    e = _e_for(family, f.series)
    out = f.series.theta() - e * f.series * (k / (2 * family.h))
    return WeightedSeries(out, k + 2)


def _require_window(f: QSeries) -> None:
    if f.prec <= min(f.ord, 0) or f.prec <= f.ord:
        raise PrecisionExceeded("series carries no coefficients to test")


def ode_residual(f: QSeries, k, family: ODEFamily = TWO_A) -> QSeries:
    """Left-hand side of the equation applied to ``f``."""
    _require_window(f)
    a, b = family.coefficients(k)
    e = _e_for(family, f)
    df = f.theta()
    return df.theta() - e * df * a + e.theta() * f * b


def sharp_prime_residual(f: QSeries, k) -> QSeries:
    """``theta_{k+2} theta_k f - (k(k+2)/64) C^2 f`` (level-2 family only)."""
    _require_window(f)
    k = as_rational(k)
    second = theta_k(theta_k(WeightedSeries(f, k)))
    c = get_form(FormName.C, max(f.prec, 1))
    return second.series - c * c * f * (k * (k + 2) / 64)


# -- the quasimodular solutions --------------------------------------------


def _index(k: int) -> int:
    if not isinstance(k, int) or k < 3 or k % 4 != 3:
        raise DomainError(f"F_k is defined for k = 3, 7, 11, ...; got {k}")
    return (k - 3) // 4


@lru_cache(maxsize=64)
def _building_blocks(prec: int, n: int):
    g = get_form(FormName.G, prec)
    d = get_form(FormName.DELTA_2A, prec)
    gp = [QSeries.constant(1, prec)]
    for _ in range(n + 1):
        gp.append(gp[-1] * g)
    dp = [QSeries.constant(1, prec)]
    for _ in range(n // 2 + 2):
        dp.append(dp[-1] * d)
    cprime = get_form(FormName.C, prec).theta()
    return gp, dp, cprime


def fk_closed_form(k: int, prec: int) -> QSeries:
    """Evaluate ``s^n P_n(G/s) C'/24 - s^(n+1) Q_n(G/s)`` with ``s^2 = Delta_2A``.

    Parity of ``P_n``/``Q_n`` makes every power of ``s`` even, so the square
    root never has to be taken.
    """
    n = _index(k)
    gp, dp, cprime = _building_blocks(prec, n)
    p, q = pq_polys(n)
    first = homogeneous_eval(p, n, gp, dp)
    second = homogeneous_eval(q, n + 1, gp, dp)
    return first * cprime / 24 - second


@lru_cache(maxsize=64)
def _fk_sequence(n: int, prec: int) -> tuple[QSeries, ...]:
    if n <= 1:
        return tuple(fk_closed_form(4 * i + 3, prec) for i in range(n + 1))
    prev = _fk_sequence(n - 1, prec)
    g = get_form(FormName.G, prec)
    d = get_form(FormName.DELTA_2A, prec)
    return prev + (g * prev[-1] + d * prev[-2] * lambda_n(n - 1),)


def clear_caches() -> None:
    """Drop memoized expansions (forms, F_k chains, power tables)."""
    from .forms import _build

    _build.cache_clear()
    _building_blocks.cache_clear()
    _fk_sequence.cache_clear()


def build_Fk(k: int, prec: int) -> QSeries:
    """``F_k`` via ``F_{k+4} = G F_k + lambda_n Delta_2A F_{k-4}``.

    The base cases ``F_3`` and ``F_7`` come from the closed form at n = 0, 1.
    """
    return _fk_sequence(_index(k), prec)[-1].normalized()


def fk_recurrence_defect(k: int, prec: int) -> QSeries:
    """``F_{k+4} - G F_k - lambda_n Delta_2A F_{k-4}`` from closed forms (k >= 7)."""
    n = _index(k)
    if n < 1:
        raise DomainError("the recurrence needs k >= 7")
    g = get_form(FormName.G, prec)
    d = get_form(FormName.DELTA_2A, prec)
    return (
        fk_closed_form(k + 4, prec)
        - g * fk_closed_form(k, prec)
        - d * fk_closed_form(k - 4, prec) * lambda_n(n)
    )


def key_lemma_check(k: int, prec: int, candidate: Optional[QSeries] = None) -> EqualityCertificate:
    """``(k/8) G F_k + C theta_k(F_k) == -((k+1)/4) lambda_n Delta_2A F_{k-4}``.

    ``candidate`` replaces ``F_k`` on the left-hand side (negative controls).
    """
    n = _index(k)
    if n < 1:
        raise DomainError("the identity is stated for k >= 7")
    fk = build_Fk(k, prec) if candidate is None else candidate
    prev = build_Fk(k - 4, prec)
    g = get_form(FormName.G, prec)
    c = get_form(FormName.C, prec)
    d = get_form(FormName.DELTA_2A, prec)
    lhs = g * fk * Fraction(k, 8) + c * theta_k(WeightedSeries(fk, k)).series
    rhs = d * prev * (-Fraction(k + 1, 4) * lambda_n(n))
    return lhs.eq_to(rhs, min(lhs.prec, rhs.prec))


# -- Frobenius -------------------------------------------------------------


class FrobeniusStatus(str, enum.Enum):
    CLEAN = "CLEAN"
    FREE_PARAMETER = "FREE_PARAMETER"
    OBSTRUCTED = "OBSTRUCTED"


@dataclass(frozen=True)
class FrobeniusReport:
    """Result of a Frobenius expansion ``f = q^rho * series``.

    ``series`` has ``ord = 0`` and constant term 1; it is None when a
    resonance forced a log q term.
    """

    family: ODEFamily
    k: Fraction
    rho: Fraction
    series: Optional[QSeries]
    status: FrobeniusStatus
    resonance_events: tuple[tuple[int, Fraction], ...] = field(default_factory=tuple)

    @property
    def solution(self) -> Optional[QSeries]:
        """``q^rho * series`` as a q-series; needs an integral exponent."""
        if self.series is None:
            return None
        if self.rho.denominator != 1:
            raise DomainError(f"exponent {self.rho} is not an integer")
        return self.series.shift(int(self.rho))


def indicial_roots(family: ODEFamily, k) -> tuple[Fraction, Fraction]:
    """Roots of ``s^2 - ((k+1)/h) s``, smaller first."""
    a, _ = family.coefficients(k)
    return tuple(sorted((Fraction(0), a)))


def frobenius_solve(
    family: ODEFamily, k, rho: Union[str, int, Fraction, None] = "auto", prec: int = 150
) -> FrobeniusReport:
    k = as_rational(k)
    roots = indicial_roots(family, k)
    if rho is None or (isinstance(rho, str) and rho.lower() == "auto"):
        rho = roots[1]
    else:
        rho = as_rational(rho)
        if rho not in roots:
            raise NotAnIndicialRoot(f"rho={rho} is not in {roots[0]}, {roots[1]}")
    if prec < 1:
        raise DomainError("precision must be positive")
    a, b = family.coefficients(k)
    e = get_form(family.e_series, prec).coeffs
    c = [Fraction(1)]
    events = []
    status = FrobeniusStatus.CLEAN
    for m in range(1, prec):
        s = rho + m
        rhs = Fraction(0)
        for j in range(1, m + 1):
            cm = c[m - j]
            if cm and e[j]:
                rhs += e[j] * (a * (s - j) - b * j) * cm
        ind = s * s - a * s
        if ind == 0:
            events.append((m, rhs))
            if rhs:
                return FrobeniusReport(family, k, rho, None, FrobeniusStatus.OBSTRUCTED, tuple(events))
            status = FrobeniusStatus.FREE_PARAMETER
            c.append(Fraction(0))
        else:
            c.append(rhs / ind)
    return FrobeniusReport(family, k, rho, QSeries(c), status, tuple(events))


def hypergeometric_solution(k: int, prec: int) -> QSeries:
    """``E4^(k/4) F(-k/12, -(k-4)/12, -(k-5)/6; 1728/j)`` for ``k = 0, 4 mod 12``."""
    if not isinstance(k, int) or k < 0 or k % 12 not in (0, 4):
        raise DomainError(f"the hypergeometric solution needs k = 0, 4 mod 12; got {k}")
    params = HypergeomParams(Fraction(-k, 12), Fraction(-(k - 4), 12), Fraction(-(k - 5), 6))
    poly = hypergeom_poly(params)
    e4 = get_form(FormName.E4, prec)
    x = get_form(FormName.J_INV_1728, prec)
    return e4 ** (k // 4) * poly_eval_qs(poly, x)
