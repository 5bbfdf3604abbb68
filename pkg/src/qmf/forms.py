"""Catalog of named q-expansions on SL2(Z), Gamma0(2) and its Fricke extension.

Every generator has a canonical construction (Eisenstein combinations and
eta quotients) plus an independent divisor-sum or pentagonal-number route
used to cross-check it.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import DomainError, FractionalPrefactor
from .series import QSeries

__all__ = [
    "FormName",
    "EtaProductSpec",
    "WEIGHTS",
    "divisor_sums",
    "odd_divisor_sums",
    "eisenstein_e2",
    "eisenstein",
    "subst_q2",
    "euler_product",
    "euler_product_pentagonal",
    "eta_product",
    "divisor_form_C",
    "divisor_form_D",
    "get_form",
]


class FormName(str, enum.Enum):
    E2 = "E2"
    E2_2TAU = "E2_2TAU"
    E4 = "E4"
    E4_2TAU = "E4_2TAU"
    E6 = "E6"
    E6_2TAU = "E6_2TAU"
    E2A = "E2A"
    C = "C"
    D = "D"
    DELTA_2A = "DELTA_2A"
    G = "G"
    DELTA = "DELTA"
    J_INV_1728 = "J_INV_1728"


# J_INV_1728 is a modular function
WEIGHTS = {
    FormName.E2: 2,
    FormName.E2_2TAU: 2,
    FormName.E4: 4,
    FormName.E4_2TAU: 4,
    FormName.E6: 6,
    FormName.E6_2TAU: 6,
    FormName.E2A: 2,
    FormName.C: 2,
    FormName.D: 4,
    FormName.DELTA_2A: 8,
    FormName.G: 4,
    FormName.DELTA: 12,
    FormName.J_INV_1728: 0,
}


@dataclass(frozen=True)
class EtaProductSpec:
    """``eta(tau)^a * eta(2 tau)^b``."""

    a: int
    b: int

    @property
    def q_exponent(self) -> Fraction:
        return Fraction(self.a + 2 * self.b, 24)


def _check_prec(prec: int) -> None:
    if prec < 1:
        raise DomainError(f"precision must be >= 1, got {prec}")


def divisor_sums(n_max: int, power: int) -> list[int]:
    """``sigma_power(n)`` for ``0 <= n < n_max`` (index 0 holds 0)."""
    s = [0] * max(n_max, 1)
    for d in range(1, n_max):
        dp = d**power
        for m in range(d, n_max, d):
            s[m] += dp
    return s


def odd_divisor_sums(n_max: int, power: int, cofactor: bool = False) -> list[int]:
    """Sum over odd divisors ``d | n`` of ``d^power`` (or ``(n/d)^power``)."""
    s = [0] * max(n_max, 1)
    for d in range(1, n_max, 2):
        for m in range(d, n_max, d):
            s[m] += (m // d) ** power if cofactor else d**power
    return s


def eisenstein_e2(prec: int) -> QSeries:
    _check_prec(prec)
    sig = divisor_sums(prec, 1)
    return QSeries.from_integers([1] + [-24 * sig[n] for n in range(1, prec)])


_EISENSTEIN_FACTORS = {2: -24, 4: 240, 6: -504}


def eisenstein(weight: int, prec: int) -> QSeries:
    """Normalized level-one Eisenstein series ``1 + c_k sum sigma_{k-1}(n) q^n``."""
    _check_prec(prec)
    if weight not in _EISENSTEIN_FACTORS:
        raise DomainError(f"no Eisenstein series of weight {weight} in the catalog")
    c = _EISENSTEIN_FACTORS[weight]
    sig = divisor_sums(prec, weight - 1)
    return QSeries.from_integers([1] + [c * sig[n] for n in range(1, prec)])


def subst_q2(f: QSeries) -> QSeries:
    """``f(2 tau)``: send ``q^e`` to ``q^(2e)``."""
    return f.dilate(2)


def euler_product(prec: int) -> QSeries:
    """``prod_{n>=1} (1 - q^n)`` multiplied out factor by factor."""
    c = [1] + [0] * (prec - 1)
    for n in range(1, prec):
        for m in range(prec - 1, n - 1, -1):
            c[m] -= c[m - n]
    return QSeries.from_integers(c[:prec])


def euler_product_pentagonal(prec: int) -> QSeries:
    """Same product from the pentagonal number theorem."""
    c = [0] * prec
    k = 0
    while True:
        hit = False
        for g in {k * (3 * k - 1) // 2, k * (3 * k + 1) // 2}:
            if g < prec:
                c[g] = -1 if k % 2 else 1
                hit = True
        if not hit:
            break
        k += 1
    return QSeries.from_integers(c)


def eta_product(spec: EtaProductSpec, prec: int) -> QSeries:
    _check_prec(prec)
    num = spec.a + 2 * spec.b
    if num % 24:
        raise FractionalPrefactor(
            f"eta^{spec.a} eta(2tau)^{spec.b} has q-prefactor exponent {num}/24"
        )
    shift = num // 24
    n = max(prec - shift, 1)
    e1 = euler_product(n)
    body = QSeries.constant(1, n)
    if spec.a:
        body = body * e1**spec.a
    if spec.b:
        body = body * (subst_q2(e1).truncate(n)) ** spec.b
    return body.shift(shift).truncate(prec)


def divisor_form_C(prec: int) -> QSeries:
    """``1 + 24 sum_{d | n, d odd} d q^n``."""
    _check_prec(prec)
    s = odd_divisor_sums(prec, 1)
    return QSeries.from_integers([1] + [24 * s[n] for n in range(1, prec)])


def divisor_form_D(prec: int) -> QSeries:
    """``sum_{d | n, d odd} (n/d)^3 q^n``."""
    _check_prec(prec)
    s = odd_divisor_sums(prec, 3, cofactor=True)
    return QSeries.from_integers([0] + s[1:prec])


def get_form(name, prec: int) -> QSeries:
    """Canonical q-expansion of a catalog form, known below ``q^prec``."""
    _check_prec(prec)
    return _build(FormName(name), prec)


@lru_cache(maxsize=256)
def _build(name: FormName, prec: int) -> QSeries:
    half = (prec + 1) // 2
    if name is FormName.E2:
        return eisenstein_e2(prec)
    if name is FormName.E4:
        return eisenstein(4, prec)
    if name is FormName.E6:
        return eisenstein(6, prec)
    if name is FormName.E2_2TAU:
        return subst_q2(eisenstein_e2(half)).truncate(prec)
    if name is FormName.E4_2TAU:
        return subst_q2(eisenstein(4, half)).truncate(prec)
    if name is FormName.E6_2TAU:
        return subst_q2(eisenstein(6, half)).truncate(prec)
    if name is FormName.E2A:
        return (_build(FormName.E2, prec) + 2 * _build(FormName.E2_2TAU, prec)) / 3
    if name is FormName.C:
        return 2 * _build(FormName.E2_2TAU, prec) - _build(FormName.E2, prec)
    if name is FormName.D:
        return eta_product(EtaProductSpec(-8, 16), prec)
    if name is FormName.DELTA_2A:
        return eta_product(EtaProductSpec(8, 8), prec)
    if name is FormName.G:
        c = _build(FormName.C, prec)
        return c * c - 128 * _build(FormName.D, prec)
    if name is FormName.DELTA:
        e4, e6 = _build(FormName.E4, prec), _build(FormName.E6, prec)
        return (e4**3 - e6 * e6) / 1728
    if name is FormName.J_INV_1728:
        # Delta has ord 1 so a precision of prec suffices for the quotient
        return 1728 * _build(FormName.DELTA, prec) / _build(FormName.E4, prec) ** 3
    raise DomainError(f"unknown form {name!r}")  # pragma: no cover
