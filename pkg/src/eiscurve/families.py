"""q-expansions: weight-k Eisenstein series, p-stabilization, Hecke operators,
the Lambda-adic Eisenstein families and the cuspidal Hida family mod X^2.

Kinds are written ``"1,phi"`` for E(1, phi), whose a_n = sum_{d|n} phi(d) d^(k-1),
and ``"phi,1"`` for E(phi, 1), whose a_n = sum_{d|n} phi(n/d) d^(k-1).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Callable, Iterable

from .characters import DirichletCharacter, classical_L_nonpositive
from .lfunction import check_setting, zeta_series
from .linvariant import nonvanishing_guard
from .padic import PadicNumber, from_rational, iwasawa_log
from .series import TruncatedSeries, agreement_digits, binomial_power, cyclotomic_exponent

__all__ = [
    "ONE_PHI",
    "PHI_ONE",
    "QExpansion",
    "RelationReport",
    "char_value",
    "cuspidal_family",
    "cyclotomic_character",
    "eisenstein_qexp",
    "hecke_apply",
    "lambda_eisenstein",
    "log_p",
    "multiplicative_table",
    "p_stabilize",
    "stabilized_eisenstein",
    "verify_linear_relation",
]

ONE_PHI = "1,phi"
PHI_ONE = "phi,1"


def _kind(kind: str) -> str:
    k = kind.replace(" ", "").replace("φ", "phi")
    if k not in (ONE_PHI, PHI_ONE):
        raise ValueError(f"unknown Eisenstein kind {kind!r}; use '1,phi' or 'phi,1'")
    return k


class QExpansion:
    """Dense q-expansion a_0 + a_1 q + ... + a_nmax q^nmax.

    Indexing past ``nmax`` raises instead of returning 0, so that identities
    can only be checked on the range where coefficients are actually known.
    """

    __slots__ = ("coeffs", "ring", "character", "weight", "label", "eigenform")

    def __init__(
        self,
        coeffs: Iterable[Any],
        ring: str = "rational",
        character: DirichletCharacter | None = None,
        weight: str = "1",
        label: str = "",
        eigenform: bool = False,
    ):
        self.coeffs = list(coeffs)
        if not self.coeffs:
            raise ValueError("a q-expansion needs at least a constant term")
        self.ring = ring
        self.character = character
        self.weight = weight
        self.label = label
        self.eigenform = eigenform

    @property
    def nmax(self) -> int:
        return len(self.coeffs) - 1

    @property
    def a0(self) -> Any:
        return self.coeffs[0]

    def __getitem__(self, n: int) -> Any:
        if n < 0 or n > self.nmax:
            raise IndexError(f"coefficient a_{n} is outside the known range 0..{self.nmax}")
        return self.coeffs[n]

    def __len__(self) -> int:
        return len(self.coeffs)

    def _like(self, coeffs, ring=None, label=None) -> QExpansion:
        return QExpansion(
            coeffs, ring or self.ring, self.character, self.weight, label or self.label
        )

    def truncate(self, nmax: int) -> QExpansion:
        if nmax > self.nmax:
            raise IndexError(f"cannot extend a q-expansion known to n={self.nmax}")
        return self._like(self.coeffs[: nmax + 1])

    def map(self, f: Callable[[Any], Any], ring: str | None = None) -> QExpansion:
        return self._like([f(c) for c in self.coeffs], ring)

    def __add__(self, other: QExpansion) -> QExpansion:
        n = min(self.nmax, other.nmax)
        return self._like([a + b for a, b in zip(self.coeffs[: n + 1], other.coeffs[: n + 1])])

    def __sub__(self, other: QExpansion) -> QExpansion:
        n = min(self.nmax, other.nmax)
        return self._like([a - b for a, b in zip(self.coeffs[: n + 1], other.coeffs[: n + 1])])

    def __neg__(self) -> QExpansion:
        return self._like([-c for c in self.coeffs])

    def scale(self, c: Any) -> QExpansion:
        return self._like([c * a for a in self.coeffs])

    def specialize(self) -> QExpansion:
        """X = 0 for a Lambda-adic expansion."""
        return self._like([c[0] if isinstance(c, TruncatedSeries) else c for c in self.coeffs],
                          ring="padic")

    def x_derivative(self) -> QExpansion:
        """d/dX at X = 0, coefficientwise."""
        return self._like(
            [c[1] if isinstance(c, TruncatedSeries) and c.mx > 1 else 0 for c in self.coeffs],
            ring="padic",
        )

    def preview(self, terms: int = 8) -> str:
        parts = []
        for n, c in enumerate(self.coeffs[: terms + 1]):
            mono = "" if n == 0 else ("q" if n == 1 else f"q^{n}")
            parts.append(f"({c})" + (f"*{mono}" if mono else ""))
        return " + ".join(parts) + f" + O(q^{min(terms, self.nmax) + 1})"

    def __repr__(self) -> str:
        return f"QExpansion({self.label or 'unnamed'}, nmax={self.nmax}, ring={self.ring})"


# -- arithmetic helpers -------------------------------------------------------


_SPF: list[int] = [0, 1]


def _smallest_prime_factors(nmax: int) -> list[int]:
    """Smallest-prime-factor sieve covering 0..nmax (grown by doubling, shared)."""
    global _SPF
    if len(_SPF) > nmax:
        return _SPF
    size = max(nmax + 1, 2 * len(_SPF))
    spf = list(range(size))
    i = 2
    while i * i < size:
        if spf[i] == i:
            for j in range(i * i, size, i):
                if spf[j] == j:
                    spf[j] = i
        i += 1
    _SPF = spf
    return spf


def primes_up_to(n: int) -> list[int]:
    spf = _smallest_prime_factors(max(n, 2))
    return [k for k in range(2, n + 1) if spf[k] == k]


def factorize(n: int) -> list[tuple[int, int]]:
    spf = _smallest_prime_factors(max(n, 2))
    out = []
    while n > 1:
        q = spf[n]
        r = 0
        while n % q == 0:
            n //= q
            r += 1
        out.append((q, r))
    return out


def divisors(n: int) -> list[int]:
    ds = [1]
    for q, r in factorize(n):
        ds = [d * q**i for d in ds for i in range(r + 1)]
    return sorted(ds)


def char_value(phi: DirichletCharacter, n: int, p: int | None = None, prec: int | None = None):
    """phi(n): an exact int for order <= 2, its p-adic embedding otherwise."""
    if phi.order <= 2:
        return phi.exact(n)
    return phi.embed(n, p, prec)


@lru_cache(maxsize=4096)
def log_p(n: int, p: int, prec: int) -> PadicNumber:
    """Iwasawa logarithm of the rational integer n."""
    return iwasawa_log(from_rational(n, 1, p, prec))


@lru_cache(maxsize=4096)
def cyclotomic_character(n: int, p: int, mx: int, prec: int) -> TruncatedSeries:
    """chi_cyc(n) = (1+X)^(log_p n / log_p(1+p)) modulo X^mx, for p ∤ n."""
    if n % p == 0:
        raise ValueError(f"chi_cyc is only defined on integers prime to {p}")
    return binomial_power(cyclotomic_exponent(n, p, prec), mx)


def multiplicative_table(
    nmax: int,
    prime_coeff: Callable[[int], Any],
    det: Callable[[int], Any],
    bad: Callable[[int], bool],
    one: Any = 1,
) -> list[Any]:
    """a_1..a_nmax of a normalized eigenform from its prime coefficients.

    a_{l^r} = a_l a_{l^(r-1)} - det(l) a_{l^(r-2)} for good l, a_l^r for bad l,
    and a_{mn} = a_m a_n for coprime m, n.  Index 0 is left as None.
    """
    spf = _smallest_prime_factors(max(nmax, 2))
    a: list[Any] = [None] * (nmax + 1)
    if nmax >= 1:
        a[1] = one
    for n in range(2, nmax + 1):
        q = spf[n]
        m = n
        while m % q == 0:
            m //= q
        if m > 1:
            a[n] = a[n // m] * a[m]
        elif n == q:
            a[n] = prime_coeff(q)
        elif bad(q):
            a[n] = a[n // q] * a[q]
        else:
            a[n] = a[q] * a[n // q] - det(q) * a[n // (q * q)]
    return a


# -- classical forms ----------------------------------------------------------


def eisenstein_qexp(
    phi: DirichletCharacter,
    k: int = 1,
    kind: str = ONE_PHI,
    nmax: int = 1000,
    p: int | None = None,
    prec: int | None = None,
) -> QExpansion:
    """E_k(1, phi) or E_k(phi, 1) by divisor sums; a_0 = L(phi, 1-k)/2 or 0."""
    kind = _kind(kind)
    if k < 1:
        raise ValueError("weight must be at least 1")
    coeffs: list[Any] = [None] * (nmax + 1)
    for n in range(1, nmax + 1):
        total: Any = 0
        for d in divisors(n):
            c = char_value(phi, d if kind == ONE_PHI else n // d, p, prec)
            if isinstance(c, int) and c == 0:
                continue
            total = total + c * d ** (k - 1)
        coeffs[n] = total
    if kind == ONE_PHI:
        L = classical_L_nonpositive(phi, k, p, prec)
        coeffs[0] = L / 2
    else:
        coeffs[0] = 0
    ring = "rational" if phi.order <= 2 else "padic"
    name = f"E_{k}({'1,' + str(phi) if kind == ONE_PHI else str(phi) + ',1'})"
    return QExpansion(coeffs, ring, phi, str(k), name, eigenform=True)


def p_stabilize(g: QExpansion, p: int, alpha: Any = 1) -> QExpansion:
    """g(q) - alpha g(q^p): coefficients a_n - alpha a_{n/p}, constant a_0 (1 - alpha)."""
    coeffs = [g.a0 * (1 - alpha)]
    for n in range(1, g.nmax + 1):
        c = g[n]
        if n % p == 0:
            c = c - alpha * g[n // p]
        coeffs.append(c)
    out = g._like(coeffs, label=f"{g.label} stabilized at {p}")
    out.eigenform = g.eigenform
    return out


def stabilized_eisenstein(
    phi: DirichletCharacter, p: int, nmax: int = 1000, prec: int | None = None
) -> QExpansion:
    """The weight-1 form f: the unique p-stabilization of E_1(1, phi) when phi(p) = 1."""
    check_setting(phi, p, irregular=True)
    E = eisenstein_qexp(phi, 1, ONE_PHI, nmax, p, prec)
    f = p_stabilize(E, p, 1)
    f.label = "f"
    return f


def hecke_apply(op: str, g: QExpansion, ell: int, det: Any = None) -> QExpansion:
    """T_ell or U_ell on a q-expansion; the valid range shrinks to nmax // ell.

    ``det`` is the value at ell of the determinant character (phi for weight-1
    forms, phi*chi_cyc for Lambda-adic families); it is required for T_ell.
    """
    op = op.upper()
    nmax = g.nmax // ell
    if nmax < 1:
        raise IndexError(f"n_max={g.nmax} too small to apply an operator at {ell}")
    if op == "U":
        coeffs = [g.a0] + [g[n * ell] for n in range(1, nmax + 1)]
    elif op == "T":
        if det is None:
            raise ValueError("T_ell needs the determinant character value")
        coeffs = [g.a0 + det * g.a0]
        for n in range(1, nmax + 1):
            c = g[n * ell]
            if n % ell == 0:
                c = c + det * g[n // ell]
            coeffs.append(c)
    else:
        raise ValueError(f"unknown Hecke operator {op!r}")
    return g._like(coeffs, label=f"{op}_{ell}({g.label})")


# -- Lambda-adic families -----------------------------------------------------


def lambda_eisenstein(
    phi: DirichletCharacter,
    p: int,
    kind: str = ONE_PHI,
    nmax: int = 1000,
    mx: int = 8,
    prec: int = 30,
    zeta=None,
) -> QExpansion:
    """The ordinary Eisenstein family E_{1,phi} or E_{phi,1} with coefficients in Lambda/X^mx."""
    kind = _kind(kind)
    check_setting(phi, p)
    N = phi.conductor

    def chi(ell: int) -> TruncatedSeries:
        return cyclotomic_character(ell, p, mx, prec)

    def phi_at(ell: int):
        return char_value(phi, ell, p, prec)

    def prime_coeff(ell: int):
        if ell == p:
            return TruncatedSeries.constant(1, mx)
        if N % ell == 0:
            return TruncatedSeries.constant(1, mx) if kind == ONE_PHI else chi(ell)
        if kind == ONE_PHI:
            return chi(ell) * phi_at(ell) + 1
        return chi(ell) + phi_at(ell)

    a = multiplicative_table(
        nmax,
        prime_coeff,
        lambda ell: chi(ell) * phi_at(ell),
        lambda ell: (N * p) % ell == 0,
        TruncatedSeries.constant(1, mx),
    )
    if kind == ONE_PHI:
        if zeta is None:
            zeta = zeta_series(phi, p, mx, prec)
        a[0] = zeta.series.truncate(mx) / 2
    else:
        a[0] = TruncatedSeries.constant(0, mx)
    label = "E_{1,phi}" if kind == ONE_PHI else "E_{phi,1}"
    return QExpansion(a, "lambda", phi, "Lambda", label, eigenform=True)


def family_determinant(phi: DirichletCharacter, p: int, mx: int, prec: int) -> Callable[[int], Any]:
    """ell -> phi(ell) chi_cyc(ell), the determinant of the Lambda-adic families."""
    return lambda ell: cyclotomic_character(ell, p, mx, prec) * char_value(phi, ell, p, prec)


def cuspidal_family(
    phi: DirichletCharacter,
    p: int,
    nmax: int,
    l_phi: PadicNumber,
    l_phi_inv: PadicNumber,
    prec: int = 30,
) -> QExpansion:
    """The cuspidal Hida family F through f, modulo X^2, from its first-order coefficients."""
    check_setting(phi, p, irregular=True)
    _, _, total = nonvanishing_guard(l_phi, l_phi_inv)
    N = phi.conductor
    mx = 2
    lg = log_p(1 + p, p, prec)
    denom = total * lg

    def prime_coeff(ell: int) -> TruncatedSeries:
        if ell == p:
            return TruncatedSeries([1, -(l_phi * l_phi_inv) / denom])
        c = char_value(phi, ell, p, prec)
        slope = (l_phi_inv * c + l_phi) * log_p(ell, p, prec) / denom
        return TruncatedSeries([1 + c, slope])

    a = multiplicative_table(
        nmax,
        prime_coeff,
        family_determinant(phi, p, mx, prec),
        lambda ell: (N * p) % ell == 0,
        TruncatedSeries.constant(1, mx),
    )
    a[0] = TruncatedSeries.constant(0, mx)
    return QExpansion(a, "lambda", phi, "Lambda", "F", eigenform=True)


# -- the linear relation ------------------------------------------------------


@dataclass
class RelationReport:
    """Per-prime digit agreement of the linear relation among first derivatives."""

    primes: list[int] = field(default_factory=list)
    derivative_digits: dict[int, float] = field(default_factory=dict)
    specialization_digits: dict[int, float] = field(default_factory=dict)
    quadratic_digits: dict[int, float] = field(default_factory=dict)
    threshold: int = 20

    @property
    def min_digits(self) -> float:
        vals = [
            *self.derivative_digits.values(),
            *self.specialization_digits.values(),
            *self.quadratic_digits.values(),
        ]
        return min(vals) if vals else float("inf")

    @property
    def passed(self) -> bool:
        return self.min_digits >= self.threshold


def verify_linear_relation(
    phi: DirichletCharacter,
    p: int,
    l_phi: PadicNumber,
    l_phi_inv: PadicNumber,
    lmax: int = 200,
    prec: int = 30,
    threshold: int = 20,
    families: tuple[QExpansion, QExpansion, QExpansion] | None = None,
) -> RelationReport:
    """(L(phi^-1)+L(phi)) a_l'(F)(0) = L(phi^-1) a_l'(E_{1,phi})(0) + L(phi) a_l'(E_{phi,1})(0)."""
    if families is None:
        e1 = lambda_eisenstein(phi, p, ONE_PHI, lmax, 2, prec)
        e2 = lambda_eisenstein(phi, p, PHI_ONE, lmax, 2, prec)
        F = cuspidal_family(phi, p, lmax, l_phi, l_phi_inv, prec)
    else:
        e1, e2, F = families
    N = phi.conductor
    report = RelationReport(threshold=threshold)
    for ell in primes_up_to(lmax):
        if (N * p) % ell == 0:
            continue
        report.primes.append(ell)
        lhs = (l_phi_inv + l_phi) * F[ell][1]
        rhs = l_phi_inv * e1[ell][1] + l_phi * e2[ell][1]
        report.derivative_digits[ell] = agreement_digits(lhs, rhs, p)
        report.specialization_digits[ell] = min(
            agreement_digits(F[ell][0], e1[ell][0], p), agreement_digits(F[ell][0], e2[ell][0], p)
        )
        if phi.order == 2:
            report.quadratic_digits[ell] = agreement_digits(
                F[ell].truncate(2) * 2, (e1[ell] + e2[ell]).truncate(2), p
            )
    return report

