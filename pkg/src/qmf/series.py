"""Truncated q-series with exact rational coefficients.

A :class:`QSeries` knows its coefficients exactly for exponents in the
half-open window ``[ord, prec)``.  Everything below ``ord`` is zero and
everything at or above ``prec`` is unknown.  All arithmetic tracks that
window pessimistically, so a result never claims a coefficient that the
inputs do not determine.

Internally the coefficients are kept as a tuple of integer numerators over
one positive common denominator; products are done by Kronecker
substitution on Python integers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Optional, Sequence, Union

from .errors import PrecisionExceeded, ZeroLeadingCoefficient

Scalar = Union[int, Fraction]

__all__ = ["QSeries", "EqualityCertificate", "as_rational"]


def as_rational(x) -> Fraction:
    """Coerce an int or rational to :class:`Fraction`; floats are rejected."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)) and not isinstance(x, float):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"exact rational expected, got {type(x).__name__}")


# -- integer convolution ---------------------------------------------------

_NAIVE_CUTOFF = 12


def _pack(values: Sequence[int], width: int) -> int:
    pos = b"".join((v if v > 0 else 0).to_bytes(width, "little") for v in values)
    neg = b"".join((-v if v < 0 else 0).to_bytes(width, "little") for v in values)
    return int.from_bytes(pos, "little") - int.from_bytes(neg, "little")


def convolve(a: Sequence[int], b: Sequence[int], n: int) -> list[int]:
    """First ``n`` coefficients of the product of two integer polynomials."""
    a = a[:n]
    b = b[:n]
    if n <= 0:
        return []
    if not a or not b:
        return [0] * n
    if min(len(a), len(b)) <= _NAIVE_CUTOFF:
        out = [0] * n
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b[: n - i]):
                    out[i + j] += x * y
        return out
    bound = max(map(abs, a)) * max(map(abs, b)) * min(len(a), len(b))
    if bound == 0:
        return [0] * n
    # two's-complement digits must stay within +-2^(8w-1)
    width = (bound.bit_length() + 2 + 7) // 8
    prod = _pack(a, width) * _pack(b, width)
    digits = len(a) + len(b) - 1
    half = 1 << (8 * width - 1)
    base = 1 << (8 * width)
    bias = half * (((1 << (8 * width * digits)) - 1) // (base - 1))
    raw = (prod + bias).to_bytes(width * digits, "little")
    m = min(n, digits)
    out = [
        int.from_bytes(raw[i * width : (i + 1) * width], "little") - half
        for i in range(m)
    ]
    out.extend([0] * (n - m))
    return out


# -- equality certificate --------------------------------------------------


@dataclass(frozen=True)
class EqualityCertificate:
    """Outcome of comparing two series on the window ``[lo, upto)``.

    Truthy iff the coefficients agree there.  ``first_mismatch`` is the
    smallest exponent where they differ.
    """

    equal: bool
    lo: int
    upto: int
    first_mismatch: Optional[int] = None

    def __bool__(self) -> bool:
        return self.equal


# -- the series type -------------------------------------------------------


class QSeries:
    """Immutable truncated power series ``sum c_e q^e`` for ``ord <= e < prec``."""

    __slots__ = ("ord", "prec", "_num", "_den")

    def __init__(self, coeffs: Iterable = (), ord: int = 0, prec: Optional[int] = None):
        fr = [as_rational(c) for c in coeffs]
        if prec is None:
            prec = ord + len(fr)
        if prec < ord:
            raise ValueError(f"prec {prec} < ord {ord}")
        size = prec - ord
        if len(fr) > size:
            fr = fr[:size]
        else:
            fr.extend([Fraction(0)] * (size - len(fr)))
        den = 1
        for c in fr:
            den = den * c.denominator // math.gcd(den, c.denominator)
        nums = [c.numerator * (den // c.denominator) for c in fr]
        self._set(nums, den, ord, prec)

    def _set(self, nums, den, ord, prec):
        if den < 0:
            nums = [-x for x in nums]
            den = -den
        g = math.gcd(den, *nums) if nums else den
        if g > 1:
            nums = [x // g for x in nums]
            den //= g
        if not any(nums):
            den = 1
        self._num = tuple(nums)
        self._den = den
        self.ord = ord
        self.prec = prec

    @classmethod
    def _raw(cls, nums, den: int, ord: int, prec: int) -> "QSeries":
        obj = cls.__new__(cls)
        obj._set(list(nums), den, ord, prec)
        return obj

    @classmethod
    def from_integers(cls, nums: Sequence[int], ord: int = 0, den: int = 1) -> "QSeries":
        """Series with coefficients ``nums[i] / den`` at exponent ``ord + i``."""
        return cls._raw(nums, den, ord, ord + len(nums))

    @classmethod
    def constant(cls, c: Scalar, prec: int) -> "QSeries":
        if prec <= 0:
            return cls.zero(prec)
        c = as_rational(c)
        return cls._raw([c.numerator] + [0] * (prec - 1), c.denominator, 0, prec)

    @classmethod
    def zero(cls, prec: int, ord: Optional[int] = None) -> "QSeries":
        if ord is None:
            ord = min(0, prec)
        return cls._raw([0] * (prec - ord), 1, ord, prec)

    @classmethod
    def monomial(cls, e: int, prec: int, c: Scalar = 1) -> "QSeries":
        """``c q^e`` known below ``prec``."""
        if e >= prec:
            return cls.zero(prec)
        c = as_rational(c)
        return cls._raw([c.numerator] + [0] * (prec - e - 1), c.denominator, e, prec)

    # -- access ------------------------------------------------------------

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        """Coefficients for exponents ``ord .. prec-1``."""
        d = self._den
        return tuple(Fraction(x, d) for x in self._num)

    @property
    def numerators(self) -> tuple[int, ...]:
        return self._num

    @property
    def denominator(self) -> int:
        return self._den

    def __getitem__(self, e: int) -> Fraction:
        if e >= self.prec:
            raise PrecisionExceeded(f"q^{e} is beyond precision {self.prec}")
        if e < self.ord:
            return Fraction(0)
        return Fraction(self._num[e - self.ord], self._den)

    def items(self):
        """Yield ``(exponent, coefficient)`` over the stored window."""
        for i, c in enumerate(self.coeffs):
            yield self.ord + i, c

    def valuation(self) -> Optional[int]:
        """Exponent of the first nonzero coefficient, or None if zero to precision."""
        for i, x in enumerate(self._num):
            if x:
                return self.ord + i
        return None

    def is_zero(self) -> bool:
        return not any(self._num)

    def leading_coefficient(self) -> Fraction:
        v = self.valuation()
        if v is None:
            raise ZeroLeadingCoefficient("series is zero to its precision")
        return self[v]

    def is_integral(self) -> bool:
        return self._den == 1

    def _eff(self) -> int:
        v = self.valuation()
        return self.prec if v is None else v

    # -- shaping -----------------------------------------------------------

    def truncate(self, prec: int) -> "QSeries":
        """Forget coefficients at exponents ``>= prec``."""
        if prec >= self.prec:
            return self
        ord = min(self.ord, prec)
        return QSeries._raw(self._num[: max(prec - self.ord, 0)], self._den, ord, prec)

    def normalized(self) -> "QSeries":
        """Same series with ``ord`` raised to the valuation (or to prec if zero)."""
        v = self._eff()
        return QSeries._raw(self._num[v - self.ord :], self._den, v, self.prec)

    def _window(self, lo: int) -> list[int]:
        """Numerators for exponents ``lo .. prec-1`` (``lo <= ord``)."""
        return [0] * (self.ord - lo) + list(self._num)

    def shift(self, n: int) -> "QSeries":
        """Multiply by ``q^n``."""
        return QSeries._raw(self._num, self._den, self.ord + n, self.prec + n)

    def dilate(self, m: int) -> "QSeries":
        """Substitute ``q -> q^m`` for a positive integer ``m``."""
        if m < 1:
            raise ValueError("dilation factor must be positive")
        nums = [0] * (m * (self.prec - self.ord))
        nums[::m] = self._num
        new_prec = m * self.prec
        # exponents between m*(prec-1) and m*prec are odd multiples, hence zero
        return QSeries._raw(nums[: new_prec - m * self.ord], self._den, m * self.ord, new_prec)

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other) -> "QSeries":
        if isinstance(other, QSeries):
            return other
        return QSeries.constant(as_rational(other), self.prec)

    def __add__(self, other) -> "QSeries":
        if not isinstance(other, QSeries):
            try:
                c = as_rational(other)
            except TypeError:
                return NotImplemented
            if self.prec <= 0 or c == 0:
                return self
            other = QSeries.constant(c, self.prec)
        prec = min(self.prec, other.prec)
        lo = min(self.ord, other.ord)
        d1, d2 = self._den, other._den
        l = d1 * d2 // math.gcd(d1, d2)
        s1, s2 = l // d1, l // d2
        a = self._window(lo)[: prec - lo]
        b = other._window(lo)[: prec - lo]
        nums = [x * s1 + y * s2 for x, y in zip(a, b)]
        return QSeries._raw(nums, l, lo, prec)

    __radd__ = __add__

    def __neg__(self) -> "QSeries":
        return QSeries._raw([-x for x in self._num], self._den, self.ord, self.prec)

    def __sub__(self, other) -> "QSeries":
        if isinstance(other, QSeries):
            return self + (-other)
        try:
            return self + (-as_rational(other))
        except TypeError:
            return NotImplemented

    def __rsub__(self, other) -> "QSeries":
        return (-self) + other

    def scale(self, r: Scalar) -> "QSeries":
        r = as_rational(r)
        return QSeries._raw(
            [x * r.numerator for x in self._num], self._den * r.denominator, self.ord, self.prec
        )

    def __mul__(self, other) -> "QSeries":
        if not isinstance(other, QSeries):
            try:
                return self.scale(other)
            except TypeError:
                return NotImplemented
        f, g = self.normalized(), other.normalized()
        ord = f.ord + g.ord
        prec = min(f.prec + g.ord, g.prec + f.ord)
        n = prec - ord
        nums = convolve(f._num, g._num, n)
        return QSeries._raw(nums, f._den * g._den, ord, prec)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "QSeries":
        if isinstance(other, QSeries):
            return self * other.invert()
        return self.scale(1 / as_rational(other))

    def __pow__(self, m: int) -> "QSeries":
        if not isinstance(m, int):
            return NotImplemented
        if m < 0:
            return self.invert() ** (-m)
        base = self.normalized()
        if m == 0:
            # as certain as the unit part of the base
            return QSeries.constant(1, base.prec - base.ord)
        result = None
        while m:
            if m & 1:
                result = base if result is None else result * base
            m >>= 1
            if m:
                base = base * base
        return result

    def theta(self) -> "QSeries":
        """The derivation ``q d/dq``."""
        nums = [(self.ord + i) * x for i, x in enumerate(self._num)]
        return QSeries._raw(nums, self._den, self.ord, self.prec)

    def invert(self) -> "QSeries":
        """Multiplicative inverse; the result has ``ord = -valuation``."""
        v = self.valuation()
        if v is None:
            raise ZeroLeadingCoefficient("cannot invert a series that is zero to precision")
        u = self._num[v - self.ord :]
        n = len(u)
        u0 = u[0]
        # b_m = B_m / u0^(m+1) keeps the recurrence in integers
        B = [1] + [0] * (n - 1)
        pw = [1]
        for _ in range(n):
            pw.append(pw[-1] * u0)
        for m in range(1, n):
            s = 0
            for j in range(1, m + 1):
                if u[j]:
                    s += u[j] * B[m - j] * pw[j - 1]
            B[m] = -s
        top = pw[n]
        nums = [self._den * B[m] * pw[n - 1 - m] for m in range(n)]
        return QSeries._raw(nums, top, -v, self.prec - 2 * v)

    # -- comparison --------------------------------------------------------

    def eq_to(self, other: "QSeries", upto: int) -> EqualityCertificate:
        """Compare coefficients at every exponent below ``upto``."""
        if not isinstance(other, QSeries):
            other = self._coerce(other)
        avail = min(self.prec, other.prec)
        if upto > avail:
            raise PrecisionExceeded(f"upto={upto} exceeds common precision {avail}")
        lo = min(self.ord, other.ord, upto)
        diff = (self - other).truncate(upto)
        v = diff.valuation()
        return EqualityCertificate(v is None, lo, upto, v)

    def is_zero_to(self, upto: int) -> EqualityCertificate:
        return self.eq_to(QSeries.zero(self.prec), upto)

    def __eq__(self, other):
        # structural equality: same window and same coefficients
        if not isinstance(other, QSeries):
            return NotImplemented
        return (self.ord, self.prec, self._num, self._den) == (
            other.ord,
            other.prec,
            other._num,
            other._den,
        )

    def __hash__(self):
        return hash((self.ord, self.prec, self._num, self._den))

    def __repr__(self) -> str:
        terms = []
        for e, c in self.items():
            if c and len(terms) < 6:
                terms.append(f"{c}*q^{e}")
        body = " + ".join(terms) if terms else "0"
        return f"QSeries({body} + O(q^{self.prec}))"
