"""Exception hierarchy for qmf."""


class QMFError(Exception):
    """Base class for all errors raised by qmf."""


class DomainError(QMFError, ValueError):
    """An argument lies outside the domain of the operation."""


class PrecisionExceeded(QMFError):
    """A coefficient was requested outside the certified window of a series."""


class ZeroLeadingCoefficient(QMFError, ZeroDivisionError):
    """Inversion of a series that is zero to its known precision."""


class FractionalPrefactor(DomainError):
    """An eta product whose q-prefactor exponent is not an integer."""


class NonTerminating(DomainError):
    """A hypergeometric series that does not reduce to a polynomial."""


class PochhammerPole(DomainError):
    """A hypergeometric denominator (c)_m vanishes before the series terminates."""


class NotAnIndicialRoot(DomainError):
    """The requested Frobenius exponent does not solve the indicial equation."""
