import pytest

from eiscurve import parse_character
from eiscurve.errors import PreconditionError
from eiscurve.lfunction import (
    euler_bernoulli_value,
    ferrero_greenberg_check,
    lp_jet,
    zeta_series,
)
from eiscurve.padic import from_rational, iwasawa_log
from eiscurve.series import agreement_digits


def test_trivial_zero(chi4, chi3):
    assert lp_jet(chi4, 5, 2, 30).value.valuation >= 25
    assert lp_jet(chi3, 7, 2, 30).value.valuation >= 25


@pytest.mark.parametrize("char,p", [("kronecker:-4", 5), ("kronecker:-3", 7)])
def test_value_at_one_minus_p(char, p):
    phi = parse_character(char)
    got = lp_jet(phi, p, 1, 30, center=1 - p).value
    exact = euler_bernoulli_value(phi, p, p, 40)
    assert agreement_digits(got, exact, p, relative=True) >= 25


def test_gross_jet_coefficient_for_chi4(chi4, linv_chi4_5):
    L, _ = linv_chi4_5
    d = lp_jet(chi4, 5, 3, 30).derivative
    assert agreement_digits(d, -L / 2, 5, relative=True) >= 25


def test_jet_consistency(chi3):
    a = lp_jet(chi3, 7, 3, 25)
    b = lp_jet(chi3, 7, 5, 25)
    for k in range(3):
        assert agreement_digits(a.series[k], b.series[k], 7) >= 22


def test_zeta_constant_term_and_derivative(chi4):
    p = 5
    z = zeta_series(chi4, p, 4, 30)
    assert z[0].valuation >= 25
    jet = lp_jet(chi4, p, 3, 30)
    lg = iwasawa_log(from_rational(1 + p, 1, p, 30))
    assert agreement_digits(z[1], -jet.derivative / lg, p) >= 25


def test_zeta_interpolates_at_first_node(chi4):
    p = 5
    z = zeta_series(chi4, p, 24, 30)
    x = from_rational((1 + p) ** (p - 1) - 1, 1, p, 30)
    node = lp_jet(chi4, p, 1, 30, center=1 - p).value
    # truncation at X^24 limits agreement to about 24 digits
    assert agreement_digits(z.series.evaluate(x), node, p) >= 22


def test_zeta_mx_consistency(chi3):
    a = zeta_series(chi3, 7, 6, 25)
    b = zeta_series(chi3, 7, 8, 25)
    for k in range(6):
        assert (a[k] - b[k]).iszero  # agree on every digit both know
        assert a[k].abs_precision >= 15


@pytest.mark.parametrize("char,p", [("kronecker:-4", 5), ("kronecker:-3", 7)])
def test_ferrero_greenberg(char, p):
    rep = ferrero_greenberg_check(parse_character(char), p, 30)
    assert rep.ord_x == 1
    assert rep.certified_valuation < 25


def test_ferrero_greenberg_regular_point(chi4):
    with pytest.raises(PreconditionError):
        ferrero_greenberg_check(chi4, 7, 20)


def test_preconditions(chi4):
    with pytest.raises(PreconditionError):
        lp_jet(parse_character("kronecker:-3"), 3, 2, 20)  # p divides the conductor
    with pytest.raises(PreconditionError):
        lp_jet(parse_character("kronecker:5"), 11, 2, 20)  # even character
