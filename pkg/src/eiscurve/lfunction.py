"""Kubota-Leopoldt p-adic L-functions L_p(phi*omega, s) as jets, and zeta_phi(X).

The value is computed from the classical convergent expansion

    L_p(s, theta) = 1/F * 1/(s-1) * sum_{a<F, p∤a} theta(a) <a>^(1-s)
                    * sum_j binom(1-s, j) B_j (F/a)^j,

theta = phi*omega, F = N*p, with all s-dependence carried as truncated power
series in t = s - center.  Binomial jets are exact rationals; precision is
lost only in the genuinely p-adic steps.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .characters import DirichletCharacter, EmbeddingError
from .errors import PreconditionError
from .padic import PadicNumber, PrecisionError, from_rational, iwasawa_log, log1p, teichmuller
from .series import TruncatedSeries, compose, log1p_series

__all__ = [
    "FerreroGreenbergReport",
    "LpJet",
    "ZetaSeries",
    "check_setting",
    "ferrero_greenberg_check",
    "lp_jet",
    "lp_value",
    "zeta_series",
]


@dataclass(frozen=True)
class LpJet:
    """Taylor coefficients of s -> L_p(phi*omega, s) at ``center``."""

    series: TruncatedSeries
    center: int
    character: DirichletCharacter
    p: int
    prec: int

    @property
    def value(self) -> PadicNumber:
        return self.series[0]

    @property
    def derivative(self) -> PadicNumber:
        return self.series[1]


@dataclass(frozen=True)
class ZetaSeries:
    """zeta_phi(X) modulo X^Mx, with zeta_phi((1+p)^(k-1) - 1) = L_p(phi*omega, 1-k)."""

    series: TruncatedSeries
    character: DirichletCharacter
    p: int
    prec: int

    def __getitem__(self, k: int) -> PadicNumber:
        return self.series[k]

    @property
    def mx(self) -> int:
        return self.series.mx


def check_setting(phi: DirichletCharacter, p: int, *, irregular: bool = False) -> None:
    """Validate the standing hypotheses: p odd, p ∤ N, phi odd, embeddable (and phi(p)=1)."""
    if p % 2 == 0 or p < 3:
        raise PreconditionError("only odd primes are supported")
    N = phi.conductor
    if N % p == 0:
        raise PreconditionError(f"p={p} divides the conductor {N}")
    if not phi.is_odd:
        raise PreconditionError(f"{phi} is even; an odd character is required")
    if not phi.embeds_in(p):
        raise EmbeddingError(f"order {phi.order} of {phi} does not divide {p}-1")
    if irregular and phi.exponent(p) != 0:
        raise PreconditionError(
            f"phi({p}) != 1 for {phi}: this point is regular; the irregular setting requires phi(p)=1"
        )


def _jmax(W: int, p: int) -> int:
    # term valuation >= j - 1 - v(j!) >= (j - 1)(p - 2)/(p - 1)
    return math.ceil((W + 2) * (p - 1) / (p - 2)) + 1


def _exp_jet(z: PadicNumber, ms: int) -> TruncatedSeries:
    """exp(z * t) modulo t^ms for v(z) >= 1."""
    out: list = [1]
    term = None
    for k in range(1, ms):
        term = z if term is None else term * z
        term = term / k
        out.append(term)
    return TruncatedSeries(out)


def lp_jet(
    phi: DirichletCharacter, p: int, ms: int = 3, prec: int = 30, center: int = 0
) -> LpJet:
    """Jet of L_p(phi*omega, s) at the integer ``center`` modulo (s - center)^ms."""
    check_setting(phi, p)
    if ms < 1:
        raise ValueError("jet order must be positive")
    prim = phi.primitive()
    N = prim.modulus
    F = N * p
    W = prec
    base = 1 - center

    from .characters import bernoulli

    jmax = _jmax(W, p)
    # exact jets B_j * binom(base - t, j)
    coeff_jets: list[tuple[int, TruncatedSeries]] = []
    binom = TruncatedSeries.constant(Fraction(1), ms)
    for j in range(jmax + 1):
        if j > 0:
            binom = binom * TruncatedSeries([Fraction(base - (j - 1)), Fraction(-1)], ms) / j
        b = bernoulli(j)
        if b == 0:
            continue
        coeff_jets.append(
            (j, TruncatedSeries([from_rational(c.numerator, c.denominator, p, W) if c else 0
                                 for c in (binom * b).coeffs]))
        )

    cap = W + 2  # valuation bound on every dropped term
    acc = TruncatedSeries.constant(0, ms)
    for a in range(1, F):
        if a % p == 0 or math.gcd(a, N) != 1:
            continue
        A = from_rational(a, 1, p, W)
        w = teichmuller(A)
        theta = prim.embed(a, p, W) * w
        bracket = A / w
        power = _exp_jet(-log1p(bracket - 1), ms) * (bracket**base)
        x = from_rational(F, a, p, W)
        inner = TruncatedSeries.constant(0, ms)
        xj = None
        last = 0
        for j, cj in coeff_jets:
            xj = x**j if xj is None else xj * x ** (j - last)
            last = j
            inner = inner + cj * xj
        acc = acc + power * inner * theta

    acc = acc.map(lambda c: c.with_precision(cap) if isinstance(c, PadicNumber) else c)
    inv = TruncatedSeries([Fraction(center - 1), Fraction(1)], ms).inverse()
    series = acc * inv / Fraction(F)
    return LpJet(series, center, phi, p, prec)


def lp_value(phi: DirichletCharacter, p: int, s: int, prec: int = 30) -> PadicNumber:
    """L_p(phi*omega, s) at an integer s."""
    return lp_jet(phi, p, ms=1, prec=prec, center=s).value


def euler_bernoulli_value(phi: DirichletCharacter, p: int, k: int, prec: int = 30):
    """(1 - phi(p) p^(k-1)) * (-B_{k,phi}/k): the interpolated value at s = 1-k."""
    from .characters import classical_L_nonpositive

    L = classical_L_nonpositive(phi, k, p, prec)
    phip = phi.value(p, p, prec)
    factor = 1 - phip * p ** (k - 1)
    if isinstance(L, Fraction) and isinstance(factor, int):
        return factor * L
    return factor * L if isinstance(L, PadicNumber) else L * factor


def cyclotomic_variable(mx: int, p: int, prec: int) -> TruncatedSeries:
    """t(X) = log_p(1+X) / log_p(1+p) modulo X^mx (so that 1+X = (1+p)^t)."""
    lg = iwasawa_log(from_rational(1 + p, 1, p, prec))
    return TruncatedSeries([0] + [c / lg for c in log1p_series(mx).coeffs[1:]])


def zeta_series(phi: DirichletCharacter, p: int, mx: int = 8, prec: int = 30) -> ZetaSeries:
    """zeta_phi(X) = L_p(phi*omega, -t(X)) with t(X) = log_p(1+X)/log_p(1+p)."""
    jet = lp_jet(phi, p, ms=mx, prec=prec, center=0)
    t = cyclotomic_variable(mx, p, prec)
    return ZetaSeries(compose(jet.series, -t), phi, p, prec)


@dataclass(frozen=True)
class FerreroGreenbergReport:
    ord_x: int
    zeta_at_zero: PadicNumber
    leading_coeff: PadicNumber
    certified_valuation: int
    precision_cap: int | float


def ferrero_greenberg_check(
    phi: DirichletCharacter, p: int, prec: int = 30, zeta: ZetaSeries | None = None
) -> FerreroGreenbergReport:
    """Certify that zeta_phi has a simple zero at X = 0."""
    check_setting(phi, p, irregular=True)
    if zeta is None:
        zeta = zeta_series(phi, p, mx=2, prec=prec)
    z0, z1 = zeta[0], zeta[1]
    if not z0.iszero:
        raise PreconditionError(f"zeta_phi(0) = {z0} is not zero: no trivial zero")
    if z1.iszero:
        raise PrecisionError(
            f"zeta_phi'(0) indistinguishable from 0 mod {p}^{z1.abs_precision}; increase precision"
        )
    return FerreroGreenbergReport(1, z0, z1, int(z1.valuation), z1.abs_precision)
