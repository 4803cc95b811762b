"""Orchestration of the numerical checks, with JSON-ready reports.

Each check records the digits of agreement it found and the threshold it was
held to.  Scalar identities are measured in relative digits; coefficient
tables in digits relative to max(|a|, |b|, 1), so that vanishing coefficients
are compared absolutely.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .characters import DirichletCharacter, classical_L_nonpositive
from .families import verify_linear_relation
from .hecke import (
    build_T,
    build_Tord,
    build_Tprime,
    congruence_module,
    cubic_relation,
    fiber_and_socle,
    up_checks,
)
from .lfunction import check_setting, euler_bernoulli_value, ferrero_greenberg_check, lp_jet, zeta_series
from .linvariant import PUnitData
from .overconvergent import (
    build_basis,
    classical_decomposition,
    cuspidal_kernel_dimension,
    dual_construction_check,
    eigenspace_checks,
    gross_check,
    l_invariants,
)
from .padic import PadicNumber, from_rational, iwasawa_log
from .series import TruncatedSeries, agreement_digits

__all__ = [
    "Check",
    "VerificationReport",
    "jsonable",
    "precision_stability",
    "verify_all",
    "verify_ferrero_greenberg",
    "verify_gross",
    "verify_interpolation",
    "verify_relation",
    "verify_structure",
    "verify_eigenspace",
    "verify_trivial_zero",
]

GUARD = 5
TABLE_THRESHOLD = 20


def table_threshold(prec: int) -> int:
    """Digits demanded of coefficient tables: 20, or prec - GUARD at low precision."""
    return min(TABLE_THRESHOLD, prec - GUARD)


def jsonable(x: Any) -> Any:
    """Render numbers for JSON: p-adics as digit records plus a readable string."""
    if isinstance(x, PadicNumber):
        out = x.to_json()
        out["text"] = repr(x)
        return out
    if isinstance(x, TruncatedSeries):
        return [jsonable(c) for c in x.coeffs]
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else x.numerator
    if isinstance(x, float) and math.isinf(x):
        return "inf" if x > 0 else "-inf"
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    return x


@dataclass
class Check:
    criterion: str
    name: str
    passed: bool
    digits: float | None = None
    threshold: float | None = None
    detail: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return jsonable(
            {
                "criterion": self.criterion,
                "name": self.name,
                "passed": self.passed,
                "digits": self.digits,
                "threshold": self.threshold,
                "detail": self.detail,
            }
        )


@dataclass
class VerificationReport:
    character: str
    p: int
    prec: int
    checks: list[Check] = field(default_factory=list)

    def add(self, check: Check) -> Check:
        self.checks.append(check)
        return check

    def extend(self, checks) -> None:
        self.checks.extend(checks)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def to_json(self) -> dict:
        return {
            "character": self.character,
            "p": self.p,
            "precision": self.prec,
            "passed": self.passed,
            "checks": [c.to_json() for c in self.checks],
        }


def _digits_check(criterion, name, digits, threshold, **detail) -> Check:
    return Check(criterion, name, digits >= threshold, digits, threshold, detail)


# -- individual criteria ------------------------------------------------------


def verify_gross(phi, p, prec=30, unit: PUnitData | None = None) -> list[Check]:
    g = gross_check(phi, p, prec, unit, threshold=prec - GUARD)
    return [_digits_check("1", "L_p'(phi omega, 0) = -L(phi) L(phi, 0)", g.digits, g.threshold,
                          lhs=g.lhs, rhs=g.rhs)]


def verify_trivial_zero(phi, p, prec=30) -> list[Check]:
    jet = lp_jet(phi, p, ms=1, prec=prec)
    v = jet.value
    return [_digits_check("2", "L_p(phi omega, 0) = 0", v.valuation, prec - GUARD, value=v)]


def verify_ferrero_greenberg(phi, p, prec=30, zeta=None) -> list[Check]:
    rep = ferrero_greenberg_check(phi, p, prec, zeta)
    cap = prec - GUARD
    return [
        _digits_check("3", "zeta_phi(0) = 0", rep.zeta_at_zero.valuation, cap,
                      value=rep.zeta_at_zero),
        Check("3", "ord_p zeta_phi'(0) certified below the cap", rep.certified_valuation < cap,
              rep.certified_valuation, cap, {"zeta_prime_0": rep.leading_coeff}),
    ]


def verify_interpolation(phi, p, prec=30, ks=None) -> list[Check]:
    ks = ks or [1 + j * (p - 1) for j in (1, 2, 3)]
    t = table_threshold(prec)
    out = []
    for k in ks:
        analytic = lp_jet(phi, p, ms=1, prec=prec, center=1 - k).value
        exact = euler_bernoulli_value(phi, p, k, prec + 10)
        if isinstance(exact, Fraction):
            exact = from_rational(exact.numerator, exact.denominator, p, prec + 10)
        d = agreement_digits(analytic, exact, p, relative=True)
        out.append(_digits_check("4", f"L_p(phi omega, {1 - k}) = (1 - p^{k - 1}) L(phi, {1 - k})",
                                 d, t, k=k, analytic=analytic))
    return out


def verify_relation(phi, p, l_phi, l_phi_inv, lmax=200, prec=30) -> list[Check]:
    t = table_threshold(prec)
    r = verify_linear_relation(phi, p, l_phi, l_phi_inv, lmax, prec, t)
    out = [
        _digits_check("5", "linear relation among a_l'(0)", min(r.derivative_digits.values()),
                      t, primes=len(r.primes), lmax=lmax),
        _digits_check("5", "a_l(F)(0) = a_l(E)(0)", min(r.specialization_digits.values()),
                      t),
    ]
    if r.quadratic_digits:
        out.append(_digits_check("5", "2 a_l(F) = a_l(E_{1,phi}) + a_l(E_{phi,1}) mod X^2",
                                 min(r.quadratic_digits.values()), t))
    return out


def verify_eigenspace(basis, nmax=1000) -> list[Check]:
    t = table_threshold(basis.prec)
    out = []
    eig = eigenspace_checks(basis, nmax, threshold=t)
    for name, d in eig.digits.items():
        out.append(_digits_check("6", name, d, t, range=eig.ranges.get(name)))
    dec = classical_decomposition(basis, nmax, t)
    for name, d in dec.digits.items():
        out.append(_digits_check("6", name, d, t, range=dec.ranges.get(name)))
    dim = cuspidal_kernel_dimension(basis)
    out.append(Check("6", "cuspidal part of the eigenspace is Q_p f", dim == 1, None, None,
                     {"dimension": dim}))
    dual = dual_construction_check(basis, nmax, t)
    for name, d in dual.digits.items():
        out.append(_digits_check("7", name, d, t, range=dual.ranges.get(name)))
    return out


def verify_structure(phi, p, l_phi, l_phi_inv, prec=30, mx_values=range(3, 9), zeta=None,
                     up_slope=None) -> list[Check]:
    t = table_threshold(prec)
    out = []
    expected = {"T": (3, 2), "T'": (3, 1), "Tord": (2, 1)}
    for mx in mx_values:
        models = [build_T(mx, p), build_Tprime(l_phi, l_phi_inv, mx), build_Tord(mx, p)]
        for A, dim in zip(models, (3 * mx - 2, 3 * mx - 3, 2 * mx - 1)):
            rep = fiber_and_socle(A)
            fib, soc = expected[A.label]
            ok = (rep.dim == dim and rep.fiber_dim == fib and rep.socle_dim == soc
                  and A.closure_defect() == 0)
            out.append(Check("8", f"{A.label} at Mx={mx}: dim, fiber, socle", ok, None, None,
                             {"dim": rep.dim, "fiber_dim": rep.fiber_dim,
                              "socle_dim": rep.socle_dim, "gorenstein": rep.gorenstein}))
        Tp = models[1]
        cub = cubic_relation(Tp, l_phi, l_phi_inv)
        cub_ok = all(x.iszero if isinstance(x, PadicNumber) else x == 0 for x in cub)
        gen = Tp.generated_dimension([Tp.generators["X"], Tp.generators["Y"]])
        out.append(Check("8", f"T' at Mx={mx}: Y cubic vanishes, 1, X, Y generate",
                         cub_ok and gen == Tp.dim and Tp.contains(Tp.generators["Y"]),
                         None, None, {"generated_dim": gen}))
        if up_slope is not None:
            uc = up_checks(models[0], Tp, up_slope)
            out.append(Check("8", f"U_p - 1 at Mx={mx}", all(uc.values()), None, None, uc))
    if zeta is None:
        zeta = zeta_series(phi, p, max(mx_values), prec)
    cm = congruence_module(zeta)
    lg = from_rational(1 + p, 1, p, prec)
    predicted = l_phi * classical_L_nonpositive(phi, 1, p, prec) / iwasawa_log(lg)
    out.append(Check("8", "congruence module: J_eis = (X), length 1 = ord_X zeta_phi",
                     cm.j_eis_is_x and cm.length_quotient == 1 and cm.lengths_match
                     and cm.annihilator_image_is_x, None, None,
                     {"length": cm.length_quotient, "ord_zeta": cm.ord_zeta}))
    out.append(_digits_check("8", "zeta = u X with u(0) = L(phi) L(phi,0) / log_p(1+p)",
                             agreement_digits(cm.unit_at_zero, predicted, p, relative=True),
                             t, u0=cm.unit_at_zero))
    return out


def verify_all(
    phi: DirichletCharacter,
    p: int,
    prec: int = 30,
    nmax: int = 1000,
    lmax: int = 200,
    mx_values=range(3, 9),
    unit: PUnitData | None = None,
    unit_inv: PUnitData | None = None,
) -> VerificationReport:
    """Criteria 1-8 for one (phi, p)."""
    check_setting(phi, p, irregular=True)
    report = VerificationReport(str(phi), p, prec)
    l_phi, l_phi_inv = l_invariants(phi, p, prec, unit, unit_inv)
    report.extend(verify_gross(phi, p, prec, unit))
    report.extend(verify_trivial_zero(phi, p, prec))
    zeta = zeta_series(phi, p, max(mx_values), prec)
    report.extend(verify_ferrero_greenberg(phi, p, prec, zeta))
    report.extend(verify_interpolation(phi, p, prec))
    report.extend(verify_relation(phi, p, l_phi, l_phi_inv, lmax, prec))
    basis = build_basis(phi, p, nmax, prec, l_phi, l_phi_inv)
    report.extend(verify_eigenspace(basis, nmax))
    from .families import cuspidal_family

    slope = cuspidal_family(phi, p, p, l_phi, l_phi_inv, prec)[p][1]
    report.extend(verify_structure(phi, p, l_phi, l_phi_inv, prec, mx_values, zeta, slope))
    return report


# -- precision stability ------------------------------------------------------


def _key_values(phi, p, prec, nmax, unit=None, unit_inv=None) -> dict[str, Any]:
    l_phi, l_phi_inv = l_invariants(phi, p, prec, unit, unit_inv)
    jet = lp_jet(phi, p, ms=3, prec=prec)
    zeta = zeta_series(phi, p, 4, prec)
    basis = build_basis(phi, p, nmax, prec, l_phi, l_phi_inv)
    vals: dict[str, Any] = {
        "L(phi)": l_phi,
        "L(phi^-1)": l_phi_inv,
        "L_p jet": jet.series,
        "zeta_phi": zeta.series,
    }
    for k in (1 + (p - 1), 1 + 2 * (p - 1)):
        vals[f"L_p({1 - k})"] = lp_jet(phi, p, ms=1, prec=prec, center=1 - k).value
    from .families import cuspidal_family

    F = cuspidal_family(phi, p, min(nmax, 200), l_phi, l_phi_inv, prec)
    for n in range(1, F.nmax + 1):
        vals[f"a_{n}(F)"] = F[n]
    vals["u(0)"] = congruence_module(zeta).unit_at_zero
    for n in range(0, nmax + 1):
        vals[f"a_{n}(f_dag(phi,1))"] = basis.f_phi_one[n]
        vals[f"a_{n}(f_dag(1,phi))"] = basis.f_one_phi[n]
    return vals


def _shared_digits_agree(lo: Any, hi: Any) -> bool:
    if isinstance(lo, TruncatedSeries):
        return all(_shared_digits_agree(a, b) for a, b in zip(lo.coeffs, hi.coeffs))
    if isinstance(lo, PadicNumber):
        return (lo - hi).iszero
    return lo == hi


def precision_stability(phi, p, lo=30, hi=40, nmax=200, unit=None, unit_inv=None) -> Check:
    """Values computed at precision ``lo`` agree with those at ``hi`` on every digit ``lo`` knows."""
    a = _key_values(phi, p, lo, nmax, unit, unit_inv)
    b = _key_values(phi, p, hi, nmax, unit, unit_inv)
    bad = [k for k in a if not _shared_digits_agree(a[k], b[k])]
    return Check("10", f"precision {lo} vs {hi}: shared digits agree", not bad, None, None,
                 {"compared": len(a), "disagreeing": bad[:10]})
