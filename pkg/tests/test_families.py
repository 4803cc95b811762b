from fractions import Fraction
from math import gcd

import pytest

from eiscurve import parse_character
from eiscurve.families import (
    PHI_ONE,
    ONE_PHI,
    QExpansion,
    cuspidal_family,
    cyclotomic_character,
    divisors,
    eisenstein_qexp,
    family_determinant,
    hecke_apply,
    lambda_eisenstein,
    log_p,
    p_stabilize,
    stabilized_eisenstein,
    verify_linear_relation,
)
from eiscurve.linvariant import PUnitData
from eiscurve.overconvergent import l_invariants
from eiscurve.series import TruncatedSeries, agreement_digits

SEXTIC = "mod:21:8=3,10=2,order=6"


def test_eisenstein_weight_one(chi4):
    E = eisenstein_qexp(chi4, 1, ONE_PHI, 30)
    assert E[1] == 1
    assert E.a0 == Fraction(1, 4)  # L(chi_-4, 0)/2
    assert E[6] == 0
    assert E[5] == 2 and E[25] == 3
    G = eisenstein_qexp(chi4, 1, PHI_ONE, 30)
    assert G.a0 == 0 and G[1] == 1


def test_eisenstein_higher_weight(chi3):
    E = eisenstein_qexp(chi3, 3, ONE_PHI, 20)
    for n in range(1, 21):
        assert E[n] == sum(chi3(d) * d**2 for d in divisors(n))
    G = eisenstein_qexp(chi3, 3, PHI_ONE, 20)
    assert G[4] == sum(chi3(4 // d) * d**2 for d in divisors(4))


def test_access_beyond_nmax_is_error(chi4):
    E = eisenstein_qexp(chi4, 1, ONE_PHI, 10)
    with pytest.raises(IndexError):
        E[11]


def test_stabilization(chi4):
    f = stabilized_eisenstein(chi4, 5, 200)
    for n in range(1, 201):
        assert f[n] == sum(chi4(d) for d in divisors(n) if d % 5)
    assert f.a0 == 0
    Up = hecke_apply("U", f, 5)
    assert all(Up[n] == f[n] for n in range(0, Up.nmax + 1))
    E = eisenstein_qexp(chi4, 1, PHI_ONE, 50)
    assert p_stabilize(E, 5, 1).a0 == 0


def test_weight_one_hecke_eigenform(chi4):
    f = stabilized_eisenstein(chi4, 5, 600)
    for ell in (3, 7, 11, 13):
        Tf = hecke_apply("T", f, ell, chi4(ell))
        assert all(Tf[n] == f[ell] * f[n] for n in range(1, Tf.nmax + 1))


def test_hecke_commutation_arbitrary_form(chi4):
    g = QExpansion([Fraction(n * n % 17, 3) for n in range(301)], "rational", chi4, "1", "g")
    a = hecke_apply("T", hecke_apply("T", g, 2, chi4(2)), 3, chi4(3))
    b = hecke_apply("T", hecke_apply("T", g, 3, chi4(3)), 2, chi4(2))
    assert a.nmax == b.nmax == 50
    assert all(a[n] == b[n] for n in range(a.nmax + 1))


def test_hecke_needs_room(chi4):
    g = eisenstein_qexp(chi4, 1, ONE_PHI, 5)
    with pytest.raises(IndexError):
        hecke_apply("U", g, 7)
    with pytest.raises(ValueError):
        hecke_apply("T", g, 2)


def test_cyclotomic_character_multiplicative():
    p, mx = 5, 5
    for n, m in ((2, 3), (7, 11), (12, 13)):
        prod = cyclotomic_character(n, p, mx, 25) * cyclotomic_character(m, p, mx, 25)
        assert agreement_digits(prod, cyclotomic_character(n * m, p, mx, 25), p) >= 18
    assert cyclotomic_character(6, p, mx, 25)[1].relative_agreement(1) >= 20


def test_lambda_eisenstein_prime_coefficients(chi4):
    p = 5
    E = lambda_eisenstein(chi4, p, ONE_PHI, 60, 4, 30)
    G = lambda_eisenstein(chi4, p, PHI_ONE, 60, 4, 30)
    lg = log_p(1 + p, p, 30)
    for ell in (3, 7, 11, 13):
        c = chi4(ell)
        assert agreement_digits(E[ell][0], 1 + c, p) >= 25
        assert agreement_digits(E[ell][1], c * log_p(ell, p, 30) / lg, p) >= 25
    assert list(E[p].coeffs) == [1, 0, 0, 0] and list(G[p].coeffs) == [1, 0, 0, 0]
    assert all(c == 0 for c in G.a0.coeffs)
    assert agreement_digits(G[2], cyclotomic_character(2, p, 4, 30), p) >= 25


def test_lambda_families_are_eigenforms(chi4):
    p, mx = 5, 3
    det = family_determinant(chi4, p, mx, 30)
    for kind in (ONE_PHI, PHI_ONE):
        fam = lambda_eisenstein(chi4, p, kind, 700, mx, 30)
        for ell in (3, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47):
            T = hecke_apply("T", fam, ell, det(ell))
            for n in range(0, T.nmax + 1):
                assert agreement_digits(T[n], fam[ell] * fam[n], p) >= 20, (kind, ell, n)
        Up = hecke_apply("U", fam, p)
        assert all(agreement_digits(Up[n], fam[n], p) >= 20 for n in range(1, Up.nmax + 1))


def test_multiplicativity_of_tables(chi3):
    fam = lambda_eisenstein(chi3, 7, ONE_PHI, 300, 3, 25)
    for m in range(2, 18):
        for n in range(2, 300 // m + 1):
            if gcd(m, n) == 1:
                assert agreement_digits(fam[m * n], fam[m] * fam[n], 7) >= 18


def test_cuspidal_family(chi4, linv_chi4_5):
    L, Li = linv_chi4_5
    p = 5
    F = cuspidal_family(chi4, p, 400, L, Li, 30)
    lg = log_p(1 + p, p, 30)
    assert agreement_digits(F[p][1], -L / (2 * lg), p) >= 25
    # l | N: phi(l) = 0
    assert agreement_digits(F[2][1], L * log_p(2, p, 30) / (2 * L * lg), p) >= 25
    f = stabilized_eisenstein(chi4, p, 400)
    spec = F.specialize()
    assert all(agreement_digits(spec[n], f[n], p) >= 28 for n in range(0, 401))
    det = family_determinant(chi4, p, 2, 30)
    for ell in (3, 7, 11, 13):
        T = hecke_apply("T", F, ell, det(ell))
        assert all(agreement_digits(T[n], F[ell] * F[n], p) >= 20 for n in range(1, T.nmax + 1))
    Up = hecke_apply("U", F, p)
    assert all(agreement_digits(Up[n], F[p] * F[n], p) >= 20 for n in range(1, Up.nmax + 1))
    assert isinstance(F[1], TruncatedSeries)


def test_linear_relation_quadratic(chi3):
    L, Li = l_invariants(chi3, 7, 30)
    rep = verify_linear_relation(chi3, 7, L, Li, lmax=200, prec=30, threshold=20)
    assert rep.passed
    assert 7 not in rep.primes and 3 not in rep.primes
    assert min(rep.quadratic_digits.values()) >= 20


def test_linear_relation_sextic():
    phi = parse_character(SEXTIC)
    # illustrative unit data with a single root of valuation 1 at 13
    u = PUnitData((13, -5, 1), 1, label="phi")
    ui = PUnitData((13, -3, 1), 1, label="phi^-1")
    L, Li = l_invariants(phi, 13, 25, u, ui)
    rep = verify_linear_relation(phi, 13, L, Li, lmax=100, prec=25, threshold=15)
    assert rep.passed
    assert not rep.quadratic_digits
