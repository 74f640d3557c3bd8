import pytest
from hypothesis import given, settings, strategies as st

from ffperiods.fields import FqField
from ffperiods.series import InsufficientPrecisionError, TruncSeries, series_arith

F2 = FqField(2, 1)
F3 = FqField(3, 1)
F4 = FqField(2, 2)


def S(field, terms, prec=None):
    return TruncSeries(field, terms, prec)


def test_geometric_inverse():
    # inv(1 - z) to precision 3 is 1 + z + z^2 + O(z^3)
    one_minus_z = S(F3, {0: 1, 1: -1})
    inv = one_minus_z.inv(prec=3)
    assert inv.prec == 3
    assert inv.terms == {0: F3.one, 1: F3.one, 2: F3.one}


def test_frobenius_coeffs_f4():
    x = F4.gen
    s = S(F4, {1: x})  # x*z
    t = s.frobenius_coeffs(1)
    assert t.terms == {1: F4.elem([1, 1])}  # (x+1)*z


def test_mul_precision_rule():
    # mul(z + O(z^5), z^2 + O(z^4)) -> z^3 + O(z^5): min(5+2, 4+1)
    a = S(F2, {1: 1}, prec=5)
    b = S(F2, {2: 1}, prec=4)
    c = a * b
    assert c.prec == 5
    assert c.terms == {3: F2.one}


def test_inv_of_inexact_leading_term_errors():
    a = S(F2, {}, prec=3)
    with pytest.raises(InsufficientPrecisionError):
        a.inv()


def test_inv_roundtrip():
    a = S(F3, {0: 1, 1: 2, 3: 1}, prec=7)
    b = a.inv()
    assert (a * b - TruncSeries.one(F3)).truncate(5).terms == {}


def test_inv_inv_recovers_input_within_precision():
    a = S(F3, {-1: 2, 0: 1, 2: 1}, prec=6)
    b = a.inv().inv()
    assert (a - b).truncate(b.prec).terms == {}


def test_monomial_inverse_exact():
    a = S(F3, {2: 2})
    b = a.inv()
    assert b.is_exact() and b.terms == {-2: F3.elem(2)}


def test_compose_basic():
    # (1 + y + y^2) o (z^2) = 1 + z^2 + z^4
    f = S(F3, {0: 1, 1: 1, 2: 1})
    g = S(F3, {2: 1})
    h = f.compose(g)
    assert h.terms == {0: F3.one, 2: F3.one, 4: F3.one}


def test_compose_requires_positive_order():
    f = S(F3, {1: 1})
    with pytest.raises(ValueError):
        f.compose(S(F3, {0: 1}))


def test_derivative_char_p():
    f = S(F3, {3: 1, 4: 1})  # z^3 + z^4
    assert f.derivative().terms == {3: F3.one}  # 3z^2 vanishes


def test_char_p_power_fast_path():
    f = S(F2, {0: 1, 1: 1}, prec=8)
    sq = f.pow_int(2)
    assert sq.terms == {0: F2.one, 2: F2.one}


def test_series_arith_dispatch():
    a = S(F3, {0: 1}, 4)
    assert series_arith(a, a, "add").terms == {0: F3.elem(2)}
    assert series_arith(a, a, "mul").terms == {0: F3.one}


coeff = st.integers(min_value=0, max_value=2)
small_series = st.builds(
    lambda d, p: TruncSeries(F3, d, p),
    st.dictionaries(st.integers(min_value=-3, max_value=5), coeff, max_size=5),
    st.integers(min_value=6, max_value=9),
)


@given(small_series, small_series, small_series)
@settings(max_examples=60, deadline=None)
def test_mul_associative_up_to_precision(a, b, c):
    lhs = (a * b) * c
    rhs = a * (b * c)
    assert lhs.agrees_with(rhs)


@given(small_series, small_series)
@settings(max_examples=60, deadline=None)
def test_mul_commutative(a, b):
    assert (a * b).agrees_with(b * a)
