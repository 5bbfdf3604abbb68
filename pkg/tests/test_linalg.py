from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from qmf.linalg import SolveStatus, certified_solve, exact_linear_solve, rational_reconstruct


def test_identity():
    res = exact_linear_solve([[1, 0], [0, 1]], [3, Fraction(1, 2)])
    assert res.status is SolveStatus.UNIQUE
    assert res.solution == (3, Fraction(1, 2))


def test_underdetermined():
    assert exact_linear_solve([[1, 1]], [2]).status is SolveStatus.UNDERDETERMINED
    assert certified_solve([[1, 1]], [2]).status is SolveStatus.UNDERDETERMINED


def test_inconsistent():
    assert exact_linear_solve([[1], [1]], [0, 1]).status is SolveStatus.NOT_IN_SPAN
    res = certified_solve([[1], [1]], [0, 1])
    assert res.status is SolveStatus.NOT_IN_SPAN and res.method == "modular"


def test_tall_consistent():
    # three equations, two unknowns, x = (1/3, -2)
    A = [[1, 0], [0, 1], [3, 1]]
    b = [Fraction(1, 3), -2, -1]
    res = certified_solve(A, b)
    assert res.status is SolveStatus.UNIQUE and res.method == "modular"
    assert res.solution == (Fraction(1, 3), -2)


def test_large_rationals_need_several_primes():
    x = (Fraction(10**30 + 7, 3**40), Fraction(-(2**70), 11))
    A = [[1, 2], [3, 5], [7, -1]]
    b = [sum(a * v for a, v in zip(row, x)) for row in A]
    res = certified_solve(A, b)
    assert res.status is SolveStatus.UNIQUE and res.solution == x


def test_rational_reconstruct():
    p = 2**31 - 1
    a = Fraction(-5, 7)
    residue = a.numerator * pow(a.denominator, -1, p) % p
    assert rational_reconstruct(residue, p) == a
    assert rational_reconstruct(0, p) == 0


@st.composite
def systems(draw):
    n = draw(st.integers(1, 4))
    m = draw(st.integers(n, n + 3))
    entries = st.integers(-3, 3)
    A = [[draw(entries) for _ in range(n)] for _ in range(m)]
    b = [draw(st.fractions(min_value=-9, max_value=9, max_denominator=5)) for _ in range(m)]
    return A, b


@settings(max_examples=150)
@given(systems())
def test_certified_agrees_with_fraction_solver(system):
    A, b = system
    exact = exact_linear_solve(A, b)
    fast = certified_solve(A, b)
    assert fast.status is exact.status
    assert fast.solution == exact.solution
