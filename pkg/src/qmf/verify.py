"""Verification suites and their report records.

Each check compares two q-series on the largest window both of them
certify and records that window, so a report can never claim more
precision than the series it looked at.
"""

from __future__ import annotations

import time
from dataclasses import asdict, dataclass, field
from typing import Callable, Optional

from .forms import (
    EtaProductSpec,
    FormName,
    divisor_form_C,
    divisor_form_D,
    eta_product,
    euler_product,
    euler_product_pentagonal,
    get_form,
)
from .ode import (
    TWO_A,
    WeightedSeries,
    build_Fk,
    fk_closed_form,
    fk_recurrence_defect,
    frobenius_solve,
    key_lemma_check,
    ode_residual,
    sharp_prime_residual,
    theta_k,
)
from .series import QSeries

SCHEMA_VERSION = 1


@dataclass
class CheckRecord:
    name: str
    k: Optional[int]
    certified_prec: int
    passed: bool
    first_failure: Optional[int] = None
    wall_time_us: int = 0


@dataclass
class VerificationReport:
    command: str
    precision: int
    checks: list[CheckRecord] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "command": self.command,
            "precision": self.precision,
            "passed": self.passed,
            "checks": [asdict(c) for c in self.checks],
        }


def _compare(name: str, k, lhs: QSeries, rhs: QSeries, start: float) -> CheckRecord:
    upto = min(lhs.prec, rhs.prec)
    cert = lhs.eq_to(rhs, upto)
    return CheckRecord(
        name, k, upto, cert.equal, cert.first_mismatch, int((time.perf_counter() - start) * 1e6)
    )


def _zero(name: str, k, s: QSeries, start: float) -> CheckRecord:
    return _compare(name, k, s, QSeries.zero(s.prec), start)


def theorem_checks(k: int, prec: int) -> list[CheckRecord]:
    """Every per-k statement about ``F_k``, through ``q^(prec-1)``."""
    out = []
    t = time.perf_counter()
    fk = build_Fk(k, prec)
    out.append(_zero("ode_residual", k, ode_residual(fk, k, TWO_A), t))
    t = time.perf_counter()
    out.append(_zero("sharp_prime_residual", k, sharp_prime_residual(fk, k), t))
    t = time.perf_counter()
    out.append(_compare("closed_form", k, fk, fk_closed_form(k, prec), t))
    t = time.perf_counter()
    order = (k + 1) // 4
    out.append(
        CheckRecord("order", k, prec, fk.valuation() == order, None if fk.valuation() == order else fk.valuation(),
                    int((time.perf_counter() - t) * 1e6))
    )
    t = time.perf_counter()
    fr = frobenius_solve(TWO_A, k, order, prec - order)
    if fr.series is None:
        out.append(CheckRecord("frobenius_match", k, prec, False, order))
    else:
        sol = fr.solution * fk[order]
        out.append(_compare("frobenius_match", k, fk, sol, t))
    if k >= 7:
        t = time.perf_counter()
        cert = key_lemma_check(k, prec)
        out.append(CheckRecord("key_lemma", k, cert.upto, cert.equal, cert.first_mismatch,
                               int((time.perf_counter() - t) * 1e6)))
        t = time.perf_counter()
        out.append(_zero("recurrence", k, fk_recurrence_defect(k, prec), t))
    return out


def _identities(prec: int) -> list[tuple[str, Callable[[], tuple[QSeries, QSeries]]]]:
    def f(name):
        return get_form(name, prec)

    def th(series, weight):
        return theta_k(WeightedSeries(series, weight), TWO_A).series

    C, D, G = f(FormName.C), f(FormName.D), f(FormName.G)
    E2, E2A, DL = f(FormName.E2), f(FormName.E2A), f(FormName.DELTA_2A)
    E4, E4b, E6, E6b = f(FormName.E4), f(FormName.E4_2TAU), f(FormName.E6), f(FormName.E6_2TAU)
    C2 = C * C
    return [
        ("theta_C", lambda: (th(C, 2), G * (-1) / 4)),
        ("theta_G", lambda: (th(G, 4), C2 * C * (-1) / 2)),
        ("theta_DELTA_2A", lambda: (th(DL, 8), QSeries.zero(prec))),
        ("G2_minus_C4", lambda: (G * G - C2 * C2, DL * (-256))),
        ("E2A_derivative", lambda: (E2A.theta(), (E2A * E2A - C2) / 8)),
        ("E2A_log_derivative", lambda: (E2A * DL, DL.theta())),
        ("DELTA_2A_product", lambda: (DL, D * (C2 - 64 * D))),
        ("C_derivative", lambda: (C.theta(), (E2 * C - C2) / 6 + 32 * D)),
        ("C2_E4", lambda: (C2, (E4 + 4 * E4b) / 5)),
        ("odd_generator_E6", lambda: (C2 * C - 128 * C * D, (E6 + 8 * E6b) / 9)),
        ("G_E4", lambda: (G, (4 * E4b - E4) / 3)),
        ("C_divisor_oracle", lambda: (C, divisor_form_C(prec))),
        ("D_divisor_oracle", lambda: (D, divisor_form_D(prec))),
        ("euler_pentagonal", lambda: (euler_product(prec), euler_product_pentagonal(prec))),
        ("DELTA_eta", lambda: (f(FormName.DELTA), eta_product(EtaProductSpec(24, 0), prec))),
    ]


def identity_checks(prec: int) -> list[CheckRecord]:
    """The generator identities behind the theorem and its proof."""
    out = []
    for name, build in _identities(prec):
        t = time.perf_counter()
        lhs, rhs = build()
        out.append(_compare(name, None, lhs, rhs, t))
    return out
