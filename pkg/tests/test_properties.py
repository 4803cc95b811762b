"""Property suites: every identity must hold to THRESHOLD p-adic digits."""
from math import gcd

from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from eiscurve import parse_character
from eiscurve.families import (
    ONE_PHI,
    PHI_ONE,
    QExpansion,
    family_determinant,
    hecke_apply,
    lambda_eisenstein,
    stabilized_eisenstein,
)
from eiscurve.padic import from_rational, iwasawa_log, teichmuller
from eiscurve.series import agreement_digits, binomial_power

THRESHOLD = 20
PREC = 30
PRIMES = st.sampled_from([5, 7, 13])
SETTINGS = dict(deadline=None, suppress_health_check=[HealthCheck.too_slow], derandomize=True)

nonzero = st.integers(min_value=-(10**12), max_value=10**12).filter(bool)

_FAMILIES: dict = {}


def _family(kind):
    if kind not in _FAMILIES:
        phi = parse_character("kronecker:-4")
        _FAMILIES[kind] = lambda_eisenstein(phi, 5, kind, 400, 4, PREC)
    return _FAMILIES[kind]


@settings(max_examples=1000, **SETTINGS)
@given(PRIMES, nonzero, nonzero, nonzero, nonzero)
def test_log_multiplicative(p, a, b, c, d):
    x = from_rational(a, b, p, PREC)
    y = from_rational(c, d, p, PREC)
    lhs = iwasawa_log(x * y)
    rhs = iwasawa_log(x) + iwasawa_log(y)
    assert agreement_digits(lhs, rhs, p) >= THRESHOLD


@settings(max_examples=300, **SETTINGS)
@given(PRIMES, nonzero, nonzero)
def test_teichmuller_properties(p, a, b):
    if a % p == 0 or b % p == 0:
        a, b = a * p + 1, b * p + 1
    u = from_rational(a, b, p, PREC)
    w = teichmuller(u)
    assert (w ** (p - 1) - 1).valuation >= THRESHOLD
    assert (w - u).valuation >= 1
    # multiplicative, and log kills it
    v = from_rational(b, a, p, PREC)
    assert ((teichmuller(u * v) - w * teichmuller(v))).valuation >= THRESHOLD
    assert iwasawa_log(w).valuation >= THRESHOLD


@settings(max_examples=200, **SETTINGS)
@given(PRIMES, nonzero, nonzero, nonzero, nonzero, st.integers(min_value=2, max_value=6))
def test_binomial_power_homomorphism(p, a, b, c, d, mx):
    # exponents in Z_p: denominators prime to p
    b = b * p + 1
    d = d * p + 1
    alpha = from_rational(a, b, p, PREC)
    beta = from_rational(c, d, p, PREC)
    lhs = binomial_power(alpha, mx) * binomial_power(beta, mx)
    rhs = binomial_power(alpha + beta, mx)
    assert agreement_digits(lhs, rhs, p) >= THRESHOLD


@settings(max_examples=100, **SETTINGS)
@given(
    st.lists(st.integers(min_value=-50, max_value=50), min_size=301, max_size=301),
    st.sampled_from([(2, 3), (3, 7), (2, 11), (7, 13)]),
    st.integers(min_value=-3, max_value=3),
    st.integers(min_value=-3, max_value=3),
)
def test_hecke_commutation(values, ells, det1, det2):
    phi = parse_character("kronecker:-4")
    g = QExpansion(values, "rational", phi, "1", "g")
    l1, l2 = ells
    a = hecke_apply("T", hecke_apply("T", g, l1, det1), l2, det2)
    b = hecke_apply("T", hecke_apply("T", g, l2, det2), l1, det1)
    assert a.nmax == b.nmax
    assert all(a[n] == b[n] for n in range(a.nmax + 1))


@settings(max_examples=50, **SETTINGS)
@given(st.sampled_from([(3, 7), (3, 11), (7, 11)]), st.sampled_from([ONE_PHI, PHI_ONE]))
def test_hecke_commutation_families(ells, kind):
    phi = parse_character("kronecker:-4")
    fam = _family(kind)
    det = family_determinant(phi, 5, 4, PREC)
    l1, l2 = ells
    a = hecke_apply("T", hecke_apply("T", fam, l1, det(l1)), l2, det(l2))
    b = hecke_apply("T", hecke_apply("T", fam, l2, det(l2)), l1, det(l1))
    assert all(agreement_digits(a[n], b[n], 5) >= THRESHOLD for n in range(a.nmax + 1))


@settings(max_examples=300, **SETTINGS)
@given(st.integers(min_value=2, max_value=400), st.integers(min_value=2, max_value=400),
       st.sampled_from([ONE_PHI, PHI_ONE, "f"]))
def test_coefficient_multiplicativity(m, n, which):
    if gcd(m, n) != 1 or m * n > 400:
        return
    if which == "f":
        g = stabilized_eisenstein(parse_character("kronecker:-4"), 5, 400)
        assert g[m * n] == g[m] * g[n]
    else:
        g = _family(which)
        assert agreement_digits(g[m * n], g[m] * g[n], 5) >= THRESHOLD
