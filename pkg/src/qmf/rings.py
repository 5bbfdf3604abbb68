"""Membership in graded rings of (quasi)modular forms on Gamma0(2).

A form is matched coefficient by coefficient against every monomial of the
right weight; the exact solution of that tall linear system either gives
its coordinates or certifies that it lies outside the span, up to the
q-precision used.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from .errors import DomainError, PrecisionExceeded
from .forms import FormName, get_form
from .linalg import SolveStatus, certified_solve
from .series import QSeries

__all__ = [
    "RingTag",
    "GENERATOR_NAMES",
    "MonomialBasis",
    "DecompositionReport",
    "enumerate_basis",
    "basis_series",
    "decompose",
    "reconstruct",
    "DEFAULT_MARGIN",
]

DEFAULT_MARGIN = 10


class RingTag(str, enum.Enum):
    QM_GAMMA02 = "QM_GAMMA02"
    MOD_GAMMA02 = "MOD_GAMMA02"
    MOD_GAMMA02_STAR = "MOD_GAMMA02_STAR"


GENERATOR_NAMES = {
    RingTag.QM_GAMMA02: ("E2", "C", "D"),
    RingTag.MOD_GAMMA02: ("C", "D"),
    RingTag.MOD_GAMMA02_STAR: ("C^2", "DELTA_2A", "C^3-128CD"),
}


@dataclass(frozen=True)
class MonomialBasis:
    ring_tag: RingTag
    weight: int
    exponent_tuples: tuple[tuple[int, ...], ...]

    def __len__(self) -> int:
        return len(self.exponent_tuples)

    @property
    def generators(self) -> tuple[str, ...]:
        return GENERATOR_NAMES[self.ring_tag]

    def label(self, i: int) -> str:
        parts = []
        for g, e in zip(self.generators, self.exponent_tuples[i]):
            if not g.replace("_", "").isalnum():
                g = f"({g})"
            if e == 1:
                parts.append(g)
            elif e > 1:
                parts.append(f"{g}^{e}")
        return "*".join(parts) or "1"


@dataclass(frozen=True)
class DecompositionReport:
    basis: MonomialBasis
    coefficients: Optional[tuple[Fraction, ...]]
    status: SolveStatus
    certified_prec: int

    def terms(self) -> dict[str, Fraction]:
        """Nonzero coefficients keyed by monomial label."""
        if self.coefficients is None:
            return {}
        return {self.basis.label(i): c for i, c in enumerate(self.coefficients) if c}

    def e2_degree(self) -> Optional[int]:
        """Largest power of E2 with a nonzero coefficient (quasimodular ring only)."""
        if self.basis.ring_tag is not RingTag.QM_GAMMA02 or self.coefficients is None:
            return None
        degs = [t[0] for t, c in zip(self.basis.exponent_tuples, self.coefficients) if c]
        return max(degs, default=0)


def enumerate_basis(ring_tag, weight: int) -> MonomialBasis:
    """All monomials of the given weight in the ring's generators."""
    tag = RingTag(ring_tag)
    if weight < 0 or weight % 2:
        raise DomainError(f"weight must be a non-negative even integer, got {weight}")
    half = weight // 2
    if tag is RingTag.QM_GAMMA02:
        # E2, C, D have weights 2, 2, 4
        tuples = [(a, half - 2 * c - a, c) for c in range(half // 2 + 1) for a in range(half - 2 * c, -1, -1)]
    elif tag is RingTag.MOD_GAMMA02:
        tuples = [(half - 2 * c, c) for c in range(half // 2 + 1)]
    else:
        # free over C^2 (weight 4) and DELTA_2A (weight 8), times 1 or the weight-6 generator
        odd = 1 if weight % 4 else 0
        rest = weight - 6 * odd
        tuples = [] if rest < 0 else [((rest - 8 * j) // 4, j, odd) for j in range(rest // 8 + 1)]
    return MonomialBasis(tag, weight, tuple(tuples))


def _generators(tag: RingTag, prec: int) -> tuple[QSeries, ...]:
    c = get_form(FormName.C, prec)
    if tag is RingTag.QM_GAMMA02:
        return get_form(FormName.E2, prec), c, get_form(FormName.D, prec)
    if tag is RingTag.MOD_GAMMA02:
        return c, get_form(FormName.D, prec)
    c2 = c * c
    odd = c2 * c - 128 * c * get_form(FormName.D, prec)
    return c2, get_form(FormName.DELTA_2A, prec), odd


@lru_cache(maxsize=32)
def basis_series(basis: MonomialBasis, prec: int) -> tuple[QSeries, ...]:
    """q-expansions of the basis monomials, known below ``q^prec``."""
    gens = _generators(basis.ring_tag, prec)
    one = QSeries.constant(1, prec)
    powers = []
    for i, g in enumerate(gens):
        top = max((t[i] for t in basis.exponent_tuples), default=0)
        table = [one]
        for _ in range(top):
            table.append(table[-1] * g)
        powers.append(table)
    out = []
    for t in basis.exponent_tuples:
        s = one
        for i, e in enumerate(t):
            if e:
                s = s * powers[i][e]
        out.append(s.truncate(prec))
    return tuple(out)


def decompose(f: QSeries, basis: MonomialBasis, margin: int = DEFAULT_MARGIN) -> DecompositionReport:
    """Coordinates of ``f`` on ``basis``, certified through ``q^(f.prec - 1)``.

    Raises PrecisionExceeded unless ``f`` carries at least ``len(basis) + margin``
    coefficients.
    """
    need = len(basis) + margin
    if f.prec < need:
        raise PrecisionExceeded(f"need precision {need} for a basis of size {len(basis)}, have {f.prec}")
    cols = basis_series(basis, f.prec)
    lo = min(f.ord, 0)
    rows = range(lo, f.prec)
    matrix = [[col[e] for col in cols] for e in rows]
    rhs = [f[e] for e in rows]
    res = certified_solve(matrix, rhs)
    return DecompositionReport(basis, res.solution, res.status, f.prec)


def reconstruct(report: DecompositionReport, prec: int) -> QSeries:
    """Linear combination of the basis given by a UNIQUE report."""
    if report.coefficients is None:
        raise DomainError(f"report has status {report.status.value}; nothing to rebuild")
    acc = QSeries.zero(prec)
    for c, s in zip(report.coefficients, basis_series(report.basis, prec)):
        if c:
            acc = acc + s * c
    return acc
