from fractions import Fraction

import pytest
import sympy

from ffperiods.ratfunc import PoleOrZeroError, QPoly, RatFunc, logderiv_value


def test_normalization_coprime_monic():
    # (x^2 - 1)/(2x - 2) normalizes to (x+1)/2 with monic denominator
    f = RatFunc(QPoly([-1, 0, 1]), QPoly([-2, 2]))
    assert f.den == QPoly([1])
    assert f.num == QPoly([Fraction(1, 2), Fraction(1, 2)])


def test_normalization_idempotent():
    f = RatFunc(QPoly([0, 2, 4]), QPoly([2, 6]))
    g = RatFunc(f.num, f.den)
    assert f == g


def test_logderiv_against_sympy_oracle():
    # oracle: symbolic differentiation of 1/(1-2x) at x0=1
    x = sympy.symbols("x")
    expr = 1 / (1 - 2 * x)
    oracle = sympy.Rational(sympy.simplify(sympy.diff(expr, x) / expr).subs(x, 1))
    f = RatFunc(QPoly([1]), QPoly([1, -2]))
    assert logderiv_value(f, 1) == Fraction(oracle.p, oracle.q)
    assert logderiv_value(f, 1) == Fraction(-2)


def test_logderiv_constant_and_x():
    assert logderiv_value(RatFunc.const(7), 5) == 0
    assert logderiv_value(RatFunc.x(), 1) == 1


def test_logderiv_pole_errors():
    f = RatFunc(QPoly([1]), QPoly([-1, 1]))  # 1/(x-1)
    with pytest.raises(PoleOrZeroError):
        logderiv_value(f, 1)
    g = RatFunc.x()
    with pytest.raises(PoleOrZeroError):
        logderiv_value(g, 0)


def test_arith_and_evaluate():
    f = RatFunc(QPoly([0, 1]))  # x
    g = RatFunc(QPoly([1]), QPoly([1, 1]))  # 1/(1+x)
    h = f * g + g
    # (x+1)/(1+x) = 1
    assert h == RatFunc.const(1)
    assert (f - f).is_zero()
    assert (f / f) == RatFunc.const(1)


def test_evaluate_exact():
    f = RatFunc(QPoly([1, 1]), QPoly([2]))  # (1+x)/2
    assert f.evaluate(Fraction(1, 3)) == Fraction(2, 3)
