import pytest

from eiscurve import parse_character
from eiscurve.families import PHI_ONE, ONE_PHI, eisenstein_qexp, log_p
from eiscurve.linvariant import PUnitData
from eiscurve.overconvergent import (
    build_basis,
    classical_decomposition,
    cuspidal_kernel_dimension,
    dual_construction_check,
    dual_f_dagger,
    eigenspace_checks,
    f_dagger_coefficient,
    gross_check,
    l_invariants,
)
from eiscurve.series import agreement_digits


@pytest.fixture(scope="module")
def basis5(chi4, linv_chi4_5):
    L, Li = linv_chi4_5
    return build_basis(chi4, 5, 300, 30, L, Li)


def test_basis_invariants(basis5):
    B = basis5
    assert B.f[0] == 0 and B.f_phi_one[0] == 0
    assert agreement_digits(B.f_one_phi[0], B.l_sum * B.l0 / 2, 5) >= 28
    assert B.f[1] == 1
    assert B.f_phi_one[1].is_zero() and B.f_one_phi[1].is_zero()


def test_closed_form_examples(basis5):
    B, p = basis5, 5
    assert agreement_digits(B.f_phi_one[p], B.l_phi, p) >= 28
    assert agreement_digits(B.f_one_phi[p], B.l_phi_inv, p) >= 28
    for ell in (2, 3, 7, 13):
        c = B.phi(ell)
        expected = (c - 1) * log_p(ell, p, 30)
        assert agreement_digits(B.f_one_phi[ell], expected, p) >= 28
        assert agreement_digits(B.f_phi_one[ell], -expected, p) >= 28


def test_prime_square_formula(basis5):
    # a_{l^r}(f_dag(1,phi)) = sum_{i=0}^r (2i - r) phi(l^i) log_p(l)
    B, p = basis5, 5
    for ell in (3, 7, 11):
        for r in (2, 3):
            if ell**r > B.nmax:
                continue
            expected = sum((2 * i - r) * B.phi(ell**i) for i in range(r + 1)) * log_p(ell, p, 30)
            assert agreement_digits(B.f_one_phi[ell**r], expected, p) >= 27


def test_eigenspace_identities(basis5):
    rep = eigenspace_checks(basis5, threshold=20)
    assert rep.passed, rep.failures()
    assert rep.ranges["(U_p-1) f_dag(phi,1) = L f"] == 200


def test_decomposition(basis5):
    rep = classical_decomposition(basis5, threshold=20)
    assert rep.passed, rep.failures()
    # n = p
    B = basis5
    E = eisenstein_qexp(B.phi, 1, ONE_PHI, 10)
    rhs = B.f[5] + (B.f_one_phi[5] + B.f_phi_one[5]) / B.l_sum
    assert agreement_digits(E[5], rhs, 5) >= 28


def test_dual_construction(basis5):
    rep = dual_construction_check(basis5, threshold=20)
    assert rep.passed, rep.failures()


def test_cuspidal_part_is_line(basis5):
    assert cuspidal_kernel_dimension(basis5) == 1


@pytest.mark.parametrize("char,p", [("kronecker:-4", 5), ("kronecker:-3", 7), ("kronecker:-3", 13)])
def test_gross(char, p):
    rep = gross_check(parse_character(char), p, 30)
    assert rep.passed
    assert rep.digits >= 25


def test_sextic_eigenspace():
    phi = parse_character("mod:21:8=3,10=2,order=6")
    u = PUnitData((13, -5, 1), 1)
    ui = PUnitData((13, -3, 1), 1)
    L, Li = l_invariants(phi, 13, 25, u, ui)
    assert not (L - Li).is_zero()
    B = build_basis(phi, 13, 200, 25, L, Li)
    rep = eigenspace_checks(B, threshold=15, up_range=50)
    assert rep.passed, rep.failures()
    assert classical_decomposition(B, threshold=15).passed
    # n >= 1 of the dual construction is independent of the units; its constant
    # term reproduces the closed form only when the Gross formula holds, which
    # needs genuine p-units rather than illustrative data
    da, db = dual_f_dagger(phi, 13, 200, L, Li, 25)
    for n in range(1, 201):
        assert agreement_digits(B.f_phi_one[n], da[n], 13) >= 20
        assert agreement_digits(B.f_one_phi[n], db[n], 13) >= 20
    a13 = f_dagger_coefficient(phi, 13, PHI_ONE, 13, L, Li, 25)
    assert agreement_digits(a13, L, 13) >= 20
