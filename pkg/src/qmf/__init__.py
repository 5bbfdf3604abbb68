"""Exact q-series toolkit for the quasimodular solutions of the level-2
hypergeometric-type differential equation."""

from .errors import (
    DomainError,
    FractionalPrefactor,
    NonTerminating,
    NotAnIndicialRoot,
    PochhammerPole,
    PrecisionExceeded,
    QMFError,
    ZeroLeadingCoefficient,
)
from .series import EqualityCertificate, QSeries

__version__ = "0.1.0"
