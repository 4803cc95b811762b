from fractions import Fraction

import pytest

from eiscurve.padic import from_rational, iwasawa_log
from eiscurve.series import (
    TruncatedSeries,
    agreement_digits,
    binomial_power,
    compose,
    exp_series,
    log1p_series,
)


def test_derivative():
    assert TruncatedSeries([1, 1]).derivative().coeffs[0] == 1
    f = TruncatedSeries([3, 2, 5, 7])
    assert list(f.derivative().coeffs[:3]) == [2, 10, 21]


def test_compose_direct_substitution():
    f = TruncatedSeries([1, 1, 1])
    g = TruncatedSeries([0, 0, 1])
    assert list(compose(f, g).coeffs) == [1, 0, 1]


def test_compose_requires_zero_constant():
    with pytest.raises(ValueError):
        compose(TruncatedSeries([1, 1]), TruncatedSeries([1, 1]))


def test_exp_log_inverse():
    mx = 8
    e = exp_series(mx) - 1
    e = TruncatedSeries([0] + list(e.coeffs[1:]))
    out = compose(log1p_series(mx), e)
    assert list(out.coeffs) == [0, 1] + [0] * (mx - 2)
    back = compose(exp_series(mx), log1p_series(mx))
    assert list(back.coeffs) == [1, 1] + [0] * (mx - 2)


def test_binomial_power_integer_cases():
    assert list(binomial_power(0, 4).coeffs) == [1, 0, 0, 0]
    assert list(binomial_power(2, 3).coeffs) == [1, 2, 1]
    assert list(binomial_power(3, 5).coeffs) == [1, 3, 3, 1, 0]


def test_binomial_power_padic_inverse():
    M = 25
    alpha = iwasawa_log(from_rational(2, 1, 5, M)) / iwasawa_log(from_rational(6, 1, 5, M))
    prod = binomial_power(alpha, 4) * binomial_power(-alpha, 4)
    one = TruncatedSeries([1, 0, 0, 0])
    assert agreement_digits(prod, one, 5) >= 18


def test_inverse_and_division():
    f = TruncatedSeries([Fraction(2), 1, 3, 0, 1])
    g = f.inverse()
    assert list((f * g).coeffs) == [1, 0, 0, 0, 0]


def test_order():
    f = TruncatedSeries([0, 0, 3, 1])
    assert f.order() == 2
    assert TruncatedSeries([0, 0]).order() is None


def test_agreement_digits_scalars():
    a = from_rational(1, 3, 5, 20)
    assert agreement_digits(a, Fraction(1, 3), 5) >= 20
    assert agreement_digits(Fraction(1, 3), Fraction(1, 3) + 125, 5) == 3
    assert agreement_digits(Fraction(25), Fraction(50), 5, relative=True) == 0
