"""Exact linear systems over Q.

:func:`exact_linear_solve` is plain fraction Gaussian elimination.
:func:`certified_solve` reaches the same answer faster for tall integer
systems: it works modulo word-sized primes, lifts by CRT and rational
reconstruction, and only returns what it can certify exactly.  When the
modular route cannot certify, it falls back to the fraction solver.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .series import as_rational

__all__ = ["SolveStatus", "SolveResult", "exact_linear_solve", "certified_solve", "rational_reconstruct"]


class SolveStatus(str, enum.Enum):
    UNIQUE = "UNIQUE"
    NOT_IN_SPAN = "NOT_IN_SPAN"
    UNDERDETERMINED = "UNDERDETERMINED"


@dataclass(frozen=True)
class SolveResult:
    status: SolveStatus
    solution: Optional[tuple[Fraction, ...]]
    rank: int
    method: str = "fraction"


def exact_linear_solve(matrix: Sequence[Sequence], rhs: Sequence) -> SolveResult:
    """Solve ``matrix @ x = rhs`` exactly.

    Inconsistent systems report NOT_IN_SPAN; consistent systems with a
    nontrivial kernel report UNDERDETERMINED.
    """
    rows = [[as_rational(v) for v in row] + [as_rational(b)] for row, b in zip(matrix, rhs)]
    if len(rows) != len(rhs) or len(matrix) != len(rhs):
        raise ValueError("matrix and rhs have different row counts")
    ncols = len(rows[0]) - 1 if rows else 0
    pivots = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][col]
        rows[r] = [v * inv for v in rows[r]]
        pr = rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], pr)]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    rank = len(pivots)
    if any(row[-1] != 0 for row in rows[rank:]):
        return SolveResult(SolveStatus.NOT_IN_SPAN, None, rank)
    if rank < ncols:
        return SolveResult(SolveStatus.UNDERDETERMINED, None, rank)
    return SolveResult(SolveStatus.UNIQUE, tuple(rows[i][-1] for i in range(ncols)), rank)


# -- modular route ---------------------------------------------------------


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for sp in (2, 3, 5, 7, 11, 13):
        if n % sp == 0:
            return n == sp
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    # deterministic for n < 3.2e9
    for a in (2, 3, 5, 7):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _prime_stream():
    p = (1 << 31) - 1
    while True:
        if _is_prime(p):
            yield p
        p -= 2


def rational_reconstruct(a: int, modulus: int) -> Optional[Fraction]:
    """The fraction ``r/s`` with ``|r|, s <= sqrt(modulus/2)`` congruent to ``a``."""
    a %= modulus
    bound = math.isqrt(modulus // 2)
    r0, r1 = modulus, a
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound or math.gcd(s1, modulus) != 1:
        return None
    return Fraction(r1, s1)


def _gauss_jordan_mod(aug: np.ndarray, p: int, ncols: int):
    """Reduced row echelon form of ``aug`` mod ``p``; returns (pivot columns, matrix)."""
    m = aug.shape[0]
    M = aug % p
    pivots = []
    r = 0
    for col in range(ncols + 1):
        nz = np.flatnonzero(M[r:, col])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            M[[r, piv]] = M[[piv, r]]
        inv = pow(int(M[r, col]), -1, p)
        M[r] = (M[r] * inv) % p
        f = M[:, col].copy()
        f[r] = 0
        # entries stay below p^2 < 2^62
        M = (M - np.outer(f, M[r])) % p
        pivots.append(col)
        r += 1
        if r == m:
            break
    return pivots, M


def _integer_rows(matrix, rhs):
    A, b = [], []
    for row, bi in zip(matrix, rhs):
        vals = [as_rational(v) for v in row] + [as_rational(bi)]
        l = 1
        for v in vals:
            l = l * v.denominator // math.gcd(l, v.denominator)
        ints = [v.numerator * (l // v.denominator) for v in vals]
        A.append(ints[:-1])
        b.append(ints[-1])
    return A, b


def _verify(A, b, x) -> bool:
    l = 1
    for v in x:
        l = l * v.denominator // math.gcd(l, v.denominator)
    X = [v.numerator * (l // v.denominator) for v in x]
    return all(sum(a * xi for a, xi in zip(row, X)) == l * bi for row, bi in zip(A, b))


def certified_solve(matrix: Sequence[Sequence], rhs: Sequence, max_primes: int = 200) -> SolveResult:
    """Same contract as :func:`exact_linear_solve`, via modular arithmetic.

    UNIQUE needs full column rank modulo some prime (rank can only drop mod p)
    and an exact check of ``A x = b``.  NOT_IN_SPAN needs ``rank [A|b] = n+1``
    modulo some prime.  Anything else goes to the fraction solver.
    """
    A, b = _integer_rows(matrix, rhs)
    m = len(A)
    n = len(A[0]) if A else 0
    if n == 0 or m == 0:
        return exact_linear_solve(matrix, rhs)
    misses = 0
    acc = None
    modulus = 1
    last = None
    for count, p in enumerate(_prime_stream()):
        if count >= max_primes or misses >= 3:
            break
        aug = np.array([[v % p for v in row] + [bi % p] for row, bi in zip(A, b)], dtype=np.int64)
        pivots, M = _gauss_jordan_mod(aug, p, n)
        if len(pivots) == n + 1 and pivots[-1] == n:
            return SolveResult(SolveStatus.NOT_IN_SPAN, None, n, "modular")
        if len(pivots) < n or pivots[-1] == n:
            misses += 1
            continue
        xs = [int(v) for v in M[:n, n]]
        if acc is None:
            acc, modulus = xs, p
        else:
            inv = pow(modulus, -1, p)
            acc = [a + modulus * (((x - a) * inv) % p) for a, x in zip(acc, xs)]
            modulus *= p
        rec = [rational_reconstruct(a, modulus) for a in acc]
        if any(v is None for v in rec):
            continue
        if rec == last and _verify(A, b, rec):
            return SolveResult(SolveStatus.UNIQUE, tuple(rec), n, "modular")
        last = rec
    return exact_linear_solve(matrix, rhs)
