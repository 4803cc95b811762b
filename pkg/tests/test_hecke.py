from fractions import Fraction

import pytest

from eiscurve.errors import PreconditionError
from eiscurve.hecke import (
    build_T,
    build_Tord,
    build_Tprime,
    congruence_module,
    cubic_relation,
    diagonal_x,
    element,
    fiber_and_socle,
    unit_element,
    up_checks,
)
from eiscurve.families import cuspidal_family
from eiscurve.lfunction import zeta_series
from eiscurve.padic import PadicNumber, from_rational, iwasawa_log
from eiscurve.series import TruncatedSeries, agreement_digits


def test_T_model():
    T = build_T(3)
    assert T.dim == 7
    assert T.contains(element([[0, 1], [0], [0]], 3))
    assert T.contains(element([[0], [0, 1], [0]], 3))
    assert not T.contains(element([[1], [0], [0]], 3))
    assert T.is_algebra()


def test_Tord_model():
    A = build_Tord(2)
    assert A.dim == 3
    assert A.is_algebra()


def test_Tprime_model(linv_chi4_5):
    L, Li = linv_chi4_5
    for mx in (3, 5):
        Tp = build_Tprime(L, Li, mx)
        assert Tp.dim == 3 * mx - 3
        assert Tp.is_algebra()
        Y = Tp.generators["Y"]
        assert Tp.contains(Y)
        assert all(x.iszero if isinstance(x, PadicNumber) else x == 0
                   for x in cubic_relation(Tp, L, Li))
        assert Tp.generated_dimension([Tp.generators["X"], Y]) == Tp.dim


def test_Tprime_excludes_generic_derivative(linv_chi4_5):
    L, Li = linv_chi4_5
    Tp = build_Tprime(L, Li, 4)
    assert not Tp.contains(element([[0, 1], [0], [0]], 4))


@pytest.mark.parametrize("mx", [3, 4, 5, 6, 7, 8])
def test_fibers_and_socles(mx, linv_chi4_5):
    L, Li = linv_chi4_5
    expected = {"T": (3, 2, False), "T'": (3, 1, True), "Tord": (2, 1, True)}
    for A in (build_T(mx, 5), build_Tprime(L, Li, mx), build_Tord(mx, 5)):
        rep = fiber_and_socle(A)
        assert rep.x_regular
        assert (rep.fiber_dim, rep.socle_dim, rep.gorenstein) == expected[A.label]


def test_diagonal_x_regular():
    T = build_T(4)
    X = diagonal_x(3, 4)
    images = [T.mul(X, v) for v in T.basis]
    # X kills exactly the top-degree part, dimension r, and nothing else
    zero = [v for v in images if all(c == 0 for c in v)]
    assert len(zero) <= 3
    assert T.contains(unit_element(3, 4))


def test_congruence_module(chi4, linv_chi4_5):
    L, _ = linv_chi4_5
    p = 5
    z = zeta_series(chi4, p, 5, 30)
    cm = congruence_module(z)
    assert cm.j_eis_is_x and cm.length_quotient == 1 and cm.lengths_match
    assert cm.annihilator_image_is_x
    predicted = L * Fraction(1, 2) / iwasawa_log(from_rational(1 + p, 1, p, 30))
    assert agreement_digits(cm.unit_at_zero, predicted, p, relative=True) >= 25


def test_congruence_module_needs_trivial_zero():
    z = TruncatedSeries([from_rational(1, 1, 5, 10), from_rational(1, 1, 5, 10)])
    with pytest.raises(PreconditionError):
        congruence_module(z)


def test_up_element(chi4, linv_chi4_5):
    L, Li = linv_chi4_5
    slope = cuspidal_family(chi4, 5, 5, L, Li, 30)[5][1]
    for mx in (3, 4):
        res = up_checks(build_T(mx, 5), build_Tprime(L, Li, mx), slope)
        assert all(res.values()), res
