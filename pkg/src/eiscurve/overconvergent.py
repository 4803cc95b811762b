"""The generalized eigenspace of the irregular weight-1 Eisenstein point.

Basis {f, f_dag(phi,1), f_dag(1,phi)} with the explicit coefficients

    a_n(f_dag(phi,1)) = sum_{d|n, p∤d} phi(d) (ord_p(n) L(phi)    - log_p(d^2/n)),
    a_n(f_dag(1,phi)) = sum_{d|n, p∤d} phi(d) (ord_p(n) L(phi^-1) + log_p(d^2/n)),

a_0 = 0 and (L(phi) + L(phi^-1)) L(phi, 0)/2 respectively.  The same forms are
rebuilt independently as scaled X-derivatives of (Eisenstein family - F).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any

from .characters import DirichletCharacter, classical_L_nonpositive
from .errors import PreconditionError
from .families import (
    ONE_PHI,
    PHI_ONE,
    QExpansion,
    char_value,
    cuspidal_family,
    divisors,
    eisenstein_qexp,
    hecke_apply,
    lambda_eisenstein,
    log_p,
    primes_up_to,
    stabilized_eisenstein,
)
from .lfunction import check_setting, lp_jet
from .linalg import kernel
from .linvariant import PUnitData, l_invariant, nonvanishing_guard
from .padic import PadicNumber, valuation
from .series import agreement_digits

__all__ = [
    "CheckReport",
    "GeneralizedEigenspaceBasis",
    "GrossReport",
    "build_basis",
    "classical_decomposition",
    "dual_construction_check",
    "dual_f_dagger",
    "eigenspace_checks",
    "f_coefficient",
    "f_dagger",
    "f_dagger_coefficient",
    "gross_check",
    "l_invariants",
    "cuspidal_kernel_dimension",
]


def _min(values) -> float:
    return min(values, default=float("inf"))


@dataclass
class CheckReport:
    """Named identities with their worst digit agreement over the tested range."""

    threshold: int = 20
    digits: dict[str, float] = field(default_factory=dict)
    ranges: dict[str, int] = field(default_factory=dict)
    scalars: dict[str, Any] = field(default_factory=dict)

    def record(self, name: str, value: float, nrange: int | None = None) -> None:
        self.digits[name] = min(self.digits.get(name, float("inf")), value)
        if nrange is not None:
            self.ranges[name] = nrange

    @property
    def min_digits(self) -> float:
        return _min(self.digits.values())

    @property
    def passed(self) -> bool:
        return self.min_digits >= self.threshold

    def failures(self) -> list[str]:
        return [k for k, v in self.digits.items() if v < self.threshold]


def l_invariants(
    phi: DirichletCharacter,
    p: int,
    prec: int = 30,
    unit: PUnitData | None = None,
    unit_inv: PUnitData | None = None,
) -> tuple[PadicNumber, PadicNumber]:
    """(L(phi), L(phi^-1)); for quadratic phi these coincide."""
    L = l_invariant(phi, p, prec, unit)
    if phi.order <= 2:
        Linv = L
    else:
        if unit_inv is None:
            raise PreconditionError("L(phi^-1) for non-quadratic phi needs its own p-unit data")
        Linv = l_invariant(phi.inverse(), p, prec, unit_inv)
    nonvanishing_guard(L, Linv)
    return L, Linv


def _kind_is_one_phi(kind: str) -> bool:
    k = kind.replace(" ", "").replace("φ", "phi")
    if k not in (ONE_PHI, PHI_ONE):
        raise ValueError(f"unknown kind {kind!r}")
    return k == ONE_PHI


def f_dagger_coefficient(
    phi: DirichletCharacter,
    p: int,
    kind: str,
    n: int,
    l_phi: PadicNumber,
    l_phi_inv: PadicNumber,
    prec: int = 30,
):
    """a_n (n >= 1) of f_dag(phi,1) or f_dag(1,phi)."""
    one_phi = _kind_is_one_phi(kind)
    Lk = l_phi_inv if one_phi else l_phi
    sign = 1 if one_phi else -1
    e = valuation(n, p)
    log_n = log_p(n, p, prec)
    total: Any = 0
    for d in divisors(n):
        if d % p == 0:
            continue
        c = char_value(phi, d, p, prec)
        if isinstance(c, int) and c == 0:
            continue
        term = Lk * e + (log_p(d, p, prec) * 2 - log_n) * sign
        total = total + c * term
    return total


def f_coefficient(phi: DirichletCharacter, p: int, n: int, prec: int | None = None):
    """a_n (n >= 1) of f = sum_{d|n, p∤d} phi(d)."""
    total: Any = 0
    for d in divisors(n):
        if d % p:
            total = total + char_value(phi, d, p, prec)
    return total


def f_dagger(
    phi: DirichletCharacter,
    p: int,
    kind: str,
    nmax: int,
    l_phi: PadicNumber,
    l_phi_inv: PadicNumber,
    l0: Any,
    prec: int = 30,
) -> QExpansion:
    """f_dag(phi,1) or f_dag(1,phi) from the closed coefficient formulas."""
    nonvanishing_guard(l_phi, l_phi_inv)
    one_phi = _kind_is_one_phi(kind)
    coeffs: list[Any] = [(l_phi + l_phi_inv) * l0 / 2 if one_phi else 0]
    coeffs += [
        f_dagger_coefficient(phi, p, kind, n, l_phi, l_phi_inv, prec) for n in range(1, nmax + 1)
    ]
    label = "f_dag(1,phi)" if one_phi else "f_dag(phi,1)"
    return QExpansion(coeffs, "padic", phi, "1", label)


@dataclass
class GeneralizedEigenspaceBasis:
    phi: DirichletCharacter
    p: int
    prec: int
    f: QExpansion
    f_phi_one: QExpansion
    f_one_phi: QExpansion
    l_phi: PadicNumber
    l_phi_inv: PadicNumber
    l0: Any

    @property
    def nmax(self) -> int:
        return self.f.nmax

    @property
    def l_sum(self) -> PadicNumber:
        return self.l_phi + self.l_phi_inv


def build_basis(
    phi: DirichletCharacter,
    p: int,
    nmax: int = 1000,
    prec: int = 30,
    l_phi: PadicNumber | None = None,
    l_phi_inv: PadicNumber | None = None,
) -> GeneralizedEigenspaceBasis:
    check_setting(phi, p, irregular=True)
    if l_phi is None:
        l_phi, l_phi_inv = l_invariants(phi, p, prec)
    elif l_phi_inv is None:
        if phi.order > 2:
            raise PreconditionError("L(phi^-1) must be given alongside L(phi)")
        l_phi_inv = l_phi
    l0 = classical_L_nonpositive(phi, 1, p, prec)
    f = stabilized_eisenstein(phi, p, nmax, prec)
    return GeneralizedEigenspaceBasis(
        phi, p, prec, f,
        f_dagger(phi, p, PHI_ONE, nmax, l_phi, l_phi_inv, l0, prec),
        f_dagger(phi, p, ONE_PHI, nmax, l_phi, l_phi_inv, l0, prec),
        l_phi, l_phi_inv, l0,
    )


def _series_digits(g: QExpansion, h: QExpansion, p: int, start: int = 0) -> float:
    n = min(g.nmax, h.nmax)
    return _min(agreement_digits(g[k], h[k], p) for k in range(start, n + 1))


def eigenspace_checks(
    basis: GeneralizedEigenspaceBasis,
    nmax: int | None = None,
    lmax: int = 50,
    threshold: int = 20,
    up_range: int | None = 200,
) -> CheckReport:
    """U_p, T_l and derivation identities on the generalized eigenspace."""
    B = basis
    p, phi, prec = B.p, B.phi, B.prec
    nmax = B.nmax if nmax is None else min(nmax, B.nmax)
    f = B.f.truncate(nmax)
    fa = B.f_phi_one.truncate(nmax)
    fb = B.f_one_phi.truncate(nmax)
    rep = CheckReport(threshold)

    # (a), (b): U_p on 1 <= n <= up_range, reading a_{np}, a_{np^2} off the closed forms
    up = up_range if up_range is not None else nmax // p
    rep.record("U_p f = f", _min(
        agreement_digits(f_coefficient(phi, p, n * p, prec), f_coefficient(phi, p, n, prec), p)
        for n in range(1, up + 1)), up)
    for kind, Lk, name in ((PHI_ONE, B.l_phi, "phi,1"), (ONE_PHI, B.l_phi_inv, "1,phi")):
        def a(n, kind=kind):
            return f_dagger_coefficient(phi, p, kind, n, B.l_phi, B.l_phi_inv, prec)
        once, twice = float("inf"), float("inf")
        for n in range(1, up + 1):
            u1 = a(n * p) - a(n)
            u2 = a(n * p * p) - a(n * p) - u1
            once = min(once, agreement_digits(u1, Lk * f_coefficient(phi, p, n, prec), p))
            twice = min(twice, agreement_digits(u2, 0, p))
        rep.record(f"(U_p-1) f_dag({name}) = L f", once, up)
        rep.record(f"(U_p-1)^2 f_dag({name}) = 0", twice, up)
        # the stored table agrees with the pointwise formula
        rep.record(f"U_p on stored table f_dag({name})", _series_digits(
            hecke_apply("U", B.f_phi_one if kind == PHI_ONE else B.f_one_phi, p) - (
                B.f_phi_one if kind == PHI_ONE else B.f_one_phi),
            f.scale(Lk), p, 1))

    # (c): (T_l - a_l(f)) f_dag is a multiple of f
    N = phi.conductor
    for ell in primes_up_to(lmax):
        if (N * p) % ell == 0:
            continue
        det = char_value(phi, ell, p, prec)
        for g, name in ((fa, "phi,1"), (fb, "1,phi")):
            Tg = hecke_apply("T", g, ell, det) - g.truncate(nmax // ell).scale(f[ell])
            scalar = Tg[1]
            rep.scalars[f"T_{ell} f_dag({name})"] = scalar
            rep.record(
                f"(T_l - a_l(f)) f_dag({name}) in Qp f",
                _series_digits(Tg, f.truncate(Tg.nmax).scale(scalar), p, 0),
                Tg.nmax,
            )
            expected = (det - 1) * log_p(ell, p, prec) * (1 if name == "1,phi" else -1)
            rep.record(f"a_l f_dag({name}) = +-(phi(l)-1) log l", agreement_digits(scalar, expected, p))

    # (d): derivation identities
    for g, name in ((fa, "phi,1"), (fb, "1,phi")):
        worst = float("inf")
        for m in range(2, math.isqrt(nmax) + 1):
            for n in range(m + 1, nmax // m + 1):
                if math.gcd(m, n) != 1:
                    continue
                rhs = f[m] * g[n] + f[n] * g[m]
                worst = min(worst, agreement_digits(g[m * n], rhs, p))
        rep.record(f"derivation a_mn f_dag({name})", worst, nmax)
        worst = float("inf")
        for ell in primes_up_to(nmax):
            if (N * p) % ell == 0:
                continue
            det = char_value(phi, ell, p, prec)
            q = ell * ell
            while q <= nmax:
                rhs = f[ell] * g[q // ell] + f[q // ell] * g[ell] - det * g[q // (ell * ell)]
                worst = min(worst, agreement_digits(g[q], rhs, p))
                q *= ell
        rep.record(f"prime-power recursion f_dag({name})", worst, nmax)
    return rep


def classical_decomposition(
    basis: GeneralizedEigenspaceBasis, nmax: int | None = None, threshold: int = 20
) -> CheckReport:
    """E_1(1, phi) = f + (f_dag(1,phi) + f_dag(phi,1)) / (L(phi) + L(phi^-1)), from n = 0."""
    B = basis
    nmax = B.nmax if nmax is None else min(nmax, B.nmax)
    E = eisenstein_qexp(B.phi, 1, ONE_PHI, nmax, B.p, B.prec)
    S = B.l_sum
    rhs = B.f.truncate(nmax) + (B.f_one_phi.truncate(nmax) + B.f_phi_one.truncate(nmax)).map(
        lambda c: c / S
    )
    rep = CheckReport(threshold)
    rep.record("constant term", agreement_digits(E[0], rhs[0], B.p), 0)
    rep.record("E_1(1,phi) = f + (f_dag sum)/(L+L')", _series_digits(E, rhs, B.p, 1), nmax)
    diff = E - B.f
    total = B.f_one_phi.truncate(nmax) + B.f_phi_one.truncate(nmax)
    rep.record("sum identity", _series_digits(total, diff.scale(S), B.p, 1), nmax)
    return rep


def dual_f_dagger(
    phi: DirichletCharacter,
    p: int,
    nmax: int,
    l_phi: PadicNumber,
    l_phi_inv: PadicNumber,
    prec: int = 30,
) -> tuple[QExpansion, QExpansion]:
    """(f_dag(phi,1), f_dag(1,phi)) as scaled X-derivatives of (E_family - F)."""
    _, _, S = nonvanishing_guard(l_phi, l_phi_inv)
    e1 = lambda_eisenstein(phi, p, ONE_PHI, nmax, 2, prec)
    e2 = lambda_eisenstein(phi, p, PHI_ONE, nmax, 2, prec)
    F = cuspidal_family(phi, p, nmax, l_phi, l_phi_inv, prec)
    lg = log_p(1 + p, p, prec)
    one_phi = (e1 - F).x_derivative().scale(S * lg / l_phi)
    phi_one = (e2 - F).x_derivative().scale(S * lg / l_phi_inv)
    one_phi.label, phi_one.label = "dual f_dag(1,phi)", "dual f_dag(phi,1)"
    return phi_one, one_phi


def dual_construction_check(
    basis: GeneralizedEigenspaceBasis, nmax: int | None = None, threshold: int = 20
) -> CheckReport:
    B = basis
    nmax = B.nmax if nmax is None else min(nmax, B.nmax)
    da, db = dual_f_dagger(B.phi, B.p, nmax, B.l_phi, B.l_phi_inv, B.prec)
    rep = CheckReport(threshold)
    rep.record("f_dag(phi,1): closed = dual", _series_digits(B.f_phi_one.truncate(nmax), da, B.p), nmax)
    rep.record("f_dag(1,phi): closed = dual", _series_digits(B.f_one_phi.truncate(nmax), db, B.p), nmax)
    return rep


def cuspidal_kernel_dimension(basis: GeneralizedEigenspaceBasis, nrows: int = 12) -> int:
    """Dimension of {v in span(f, f_dag's) : (U_p - 1) v = 0, a_0(v) = 0} on the first rows."""
    B = basis
    p = B.p
    gens = [B.f, B.f_phi_one, B.f_one_phi]
    images = [hecke_apply("U", g, p) - g for g in gens]
    m = min(nrows, images[0].nmax)
    rows = [[g[0] for g in gens]]
    rows += [[img[n] for img in images] for n in range(1, m + 1)]
    threshold = B.prec - 5
    ker = kernel(rows, p, threshold)
    return len(ker)


@dataclass
class GrossReport:
    lhs: PadicNumber
    rhs: PadicNumber
    digits: float
    threshold: int

    @property
    def passed(self) -> bool:
        return self.digits >= self.threshold


def gross_check(
    phi: DirichletCharacter,
    p: int,
    prec: int = 30,
    unit: PUnitData | None = None,
    threshold: int | None = None,
) -> GrossReport:
    """L_p'(phi*omega, 0) against -L(phi) L(phi, 0): relative digits of agreement."""
    check_setting(phi, p, irregular=True)
    lhs = lp_jet(phi, p, ms=2, prec=prec).derivative
    L = l_invariant(phi, p, prec, unit)
    l0 = classical_L_nonpositive(phi, 1, p, prec)
    rhs = -L * l0
    digits = agreement_digits(lhs, rhs, p, relative=True)
    return GrossReport(lhs, rhs, digits, prec - 5 if threshold is None else threshold)
