from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qmf import FractionalPrefactor, QSeries
from qmf.forms import (
    EtaProductSpec,
    FormName,
    divisor_form_C,
    divisor_form_D,
    eisenstein,
    eisenstein_e2,
    eta_product,
    euler_product,
    euler_product_pentagonal,
    get_form,
    subst_q2,
)

N = 300


def test_e2_head():
    assert eisenstein_e2(4).coeffs == (1, -24, -72, -96)


def test_e2a_from_e2():
    e2 = eisenstein_e2(3)
    e2a = (e2 + 2 * subst_q2(e2).truncate(3)) / 3
    assert e2a.coeffs == (1, -8, -40)


def test_subst_q2_basic():
    assert subst_q2(QSeries([1, -24])).coeffs == (1, 0, -24, 0)
    assert subst_q2(QSeries.zero(4)).is_zero()


def test_c_from_e2():
    e2 = eisenstein_e2(4)
    c = 2 * subst_q2(e2).truncate(4) - e2
    assert c.coeffs == (1, 24, 24, 96)


@pytest.mark.parametrize(
    "a, b, expected",
    [(8, 8, (1, -8, 12, 64)), (-8, 16, (1, 8, 28, 64))],
)
def test_eta_products(a, b, expected):
    s = eta_product(EtaProductSpec(a, b), 5)
    assert s.ord == 1
    assert s.coeffs == expected


def test_eta_fractional_prefactor():
    with pytest.raises(FractionalPrefactor):
        eta_product(EtaProductSpec(1, 0), 5)


def test_divisor_forms():
    c, d = divisor_form_C(5), divisor_form_D(5)
    assert c[3] == 96 and d[4] == 64
    assert c[0] == 1 and d[0] == 0


def test_g_two_routes():
    g = get_form(FormName.G, 3)
    assert g.coeffs == (1, -80, -400)
    e4 = eisenstein(4, 3)
    alt = (4 * subst_q2(eisenstein(4, 2)).truncate(3) - e4) / 3
    assert g.eq_to(alt, 3)


def test_delta_2a_catalog():
    assert get_form("DELTA_2A", 5).coeffs == (1, -8, 12, 64)


def test_j_inverse_against_eta_route():
    # j/1728 built from the pentagonal Euler product, independent of E6
    n = 40
    eta24 = (euler_product_pentagonal(n) ** 24).shift(1).truncate(n)
    j_over_1728 = eisenstein(4, n) ** 3 / eta24 / 1728
    assert j_over_1728.ord == -1
    x = get_form(FormName.J_INV_1728, n)
    back = j_over_1728.invert()
    assert x.eq_to(back, min(x.prec, back.prec))


def test_j_inverse_leading_terms():
    # j = 1/q + 744 + 196884 q + ...  gives  1/j = q - 744 q^2 + (744^2 - 196884) q^3
    x = get_form(FormName.J_INV_1728, 4)
    assert x.ord == 1
    assert x.coeffs == (1728, -1728 * 744, 1728 * (744**2 - 196884))


def test_cross_constructions():
    c, d = get_form("C", N), get_form("D", N)
    assert c.eq_to(divisor_form_C(N), N)
    assert d.eq_to(divisor_form_D(N), N)
    dl = get_form("DELTA_2A", N)
    assert dl.eq_to(d * (c * c - 64 * d), N)


def test_eisenstein_level_two_identities():
    c, d = get_form("C", N), get_form("D", N)
    e4, e4b = get_form("E4", N), get_form("E4_2TAU", N)
    e6, e6b = get_form("E6", N), get_form("E6_2TAU", N)
    assert (c * c).eq_to((e4 + 4 * e4b) / 5, N)
    assert (c**3 - 128 * c * d).eq_to((e6 + 8 * e6b) / 9, N)
    assert get_form("G", N).eq_to((4 * e4b - e4) / 3, N)


def test_e2a_log_derivative():
    dl, e2a = get_form("DELTA_2A", N), get_form("E2A", N)
    assert (e2a * dl).eq_to(dl.theta(), N)
    ratio = dl.theta() / dl
    assert ratio.eq_to(e2a, ratio.prec)


def test_c_prime_identity():
    c, d, e2 = get_form("C", N), get_form("D", N), get_form("E2", N)
    assert c.theta().eq_to((e2 * c - c * c) / 6 + 32 * d, N)


def test_euler_product_two_ways():
    assert euler_product(N).eq_to(euler_product_pentagonal(N), N)


@given(st.sampled_from(list(FormName)), st.integers(2, 40), st.integers(2, 40))
def test_precision_consistency(name, p1, p2):
    f, g = get_form(name, p1), get_form(name, p2)
    n = min(f.prec, g.prec)
    assert f.eq_to(g, n)


@given(
    st.lists(st.fractions(max_denominator=5), min_size=1, max_size=15),
    st.lists(st.fractions(max_denominator=5), min_size=1, max_size=15),
)
def test_subst_q2_is_multiplicative(a, b):
    f, g = QSeries(a), QSeries(b)
    lhs = subst_q2(f * g)
    rhs = subst_q2(f) * subst_q2(g)
    assert lhs.eq_to(rhs, min(lhs.prec, rhs.prec))


def test_catalog_is_integral_where_expected():
    for name in FormName:
        s = get_form(name, 30)
        assert s.is_integral(), name
    assert get_form("E2A", 30)[1] == Fraction(-8)
