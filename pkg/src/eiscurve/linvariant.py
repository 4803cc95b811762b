"""L-invariants of odd characters from explicit p-units.

For an odd character phi with phi(p) = 1 the invariant is built from a
p-unit u in the phi^(-1)-eigenspace and the distinguished place v0 above p:

    L(phi) = log_p(iota(u)) / ord_p(iota(u)).

The sign is the one for which L_p'(phi*omega, 0) = -L(phi) L(phi, 0) holds
with the Kubota-Leopoldt normalization used in :mod:`eiscurve.lfunction`.
For quadratic phi = chi_d the unit is u = pi/pi_bar, where pi generates
P^h (P the prime of v0, h the class number), so L(phi) = 2 log_p(r)/h with
r = iota(pi) the root of T^2 - xT + p^h of valuation h.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .characters import DirichletCharacter, is_fundamental_discriminant, kronecker
from .errors import EmbeddingAmbiguityError, PreconditionError
from .lfunction import check_setting
from .padic import PadicNumber, PrecisionError, iwasawa_log

__all__ = [
    "PUnitData",
    "QuadraticOrderData",
    "RootInfo",
    "class_number",
    "l_invariant",
    "locate_root",
    "nonvanishing_guard",
    "split_prime_power_generator",
]

GUARD_DIGITS = 5


def class_number(d: int) -> int:
    """Number of reduced primitive positive definite forms of discriminant d."""
    if d >= 0 or not is_fundamental_discriminant(d):
        raise ValueError(f"{d} is not a negative fundamental discriminant")
    h = 0
    a = 1
    while 3 * a * a <= -d:
        for b in range(-a + 1, a + 1):
            if (b * b - d) % (4 * a):
                continue
            c = (b * b - d) // (4 * a)
            if c < a or (b < 0 and c == a):
                continue
            if math.gcd(math.gcd(a, abs(b)), c) == 1:
                h += 1
        a += 1
    return h


@dataclass(frozen=True)
class PUnitData:
    """Minimal polynomial (low degree first) of a p-unit and its valuation at v0."""

    coefficients: tuple[Fraction, ...]
    valuation: int
    label: str = ""
    root_residue: int | None = None

    def __post_init__(self):
        cs = tuple(Fraction(c) for c in self.coefficients)
        object.__setattr__(self, "coefficients", cs)
        if len(cs) < 2 or cs[-1] == 0:
            raise ValueError("need a polynomial of degree at least 1")
        if self.valuation == 0:
            raise ValueError("a p-unit with ord = 0 at v0 gives no L-invariant")

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def integral_coefficients(self) -> list[int]:
        den = 1
        for c in self.coefficients:
            den = den * c.denominator // math.gcd(den, c.denominator)
        return [int(c * den) for c in self.coefficients]

    def to_json(self) -> dict:
        out = {
            "coefficients": [
                c.numerator if c.denominator == 1 else f"{c.numerator}/{c.denominator}"
                for c in self.coefficients
            ],
            "valuation": self.valuation,
            "label": self.label,
        }
        if self.root_residue is not None:
            out["root_residue"] = self.root_residue
        return out

    @classmethod
    def from_json(cls, data: dict | str) -> PUnitData:
        if isinstance(data, str):
            data = json.loads(data)
        return cls(
            tuple(Fraction(c) for c in data["coefficients"]),
            int(data["valuation"]),
            data.get("label", ""),
            data.get("root_residue"),
        )

    @classmethod
    def load(cls, path) -> PUnitData:
        with open(path) as fh:
            return cls.from_json(json.load(fh))


@dataclass(frozen=True)
class QuadraticOrderData:
    """pi = (x + y sqrt(d))/2 of norm p^h, minimal polynomial T^2 - xT + p^h."""

    discriminant: int
    p: int
    class_number: int
    x: int
    y: int

    def __post_init__(self):
        if self.x**2 + abs(self.discriminant) * self.y**2 != 4 * self.p**self.class_number:
            raise ValueError("(x, y) does not solve the norm equation")

    @property
    def generator(self) -> tuple[int, int]:
        return (self.x, self.y)

    @property
    def norm(self) -> int:
        return self.p**self.class_number

    @property
    def minimal_polynomial(self) -> tuple[int, int, int]:
        """Coefficients (p^h, -x, 1), low degree first."""
        return (self.norm, -self.x, 1)

    def unit_data(self) -> PUnitData:
        """Minimal polynomial of pi/pi_bar: p^h T^2 - (x^2 - 2p^h) T + p^h."""
        q = self.norm
        return PUnitData(
            (q, -(self.x**2 - 2 * q), q),
            self.class_number,
            label=f"kronecker:{self.discriminant}",
        )


def split_prime_power_generator(d: int, p: int) -> QuadraticOrderData:
    """Generator of P^h for a prime P | p of Q(sqrt d): smallest y >= 1, then smallest x >= 0."""
    if p < 3 or p % 2 == 0:
        raise PreconditionError("p must be an odd prime")
    if d % p == 0 or kronecker(d, p) != 1:
        raise PreconditionError(f"{p} is not split in Q(sqrt({d}))")
    h = class_number(d)
    target = 4 * p**h
    ymax = math.isqrt(target // abs(d)) + 1
    for y in range(1, ymax + 1):
        rest = target - abs(d) * y * y
        if rest < 0:
            break
        x = math.isqrt(rest)
        if x * x == rest and x % p != 0:
            return QuadraticOrderData(d, p, h, x, y)
    raise RuntimeError(f"norm equation x^2 + {-d} y^2 = 4*{p}^{h} has no admissible solution")


@dataclass(frozen=True)
class RootInfo:
    root: PadicNumber
    residue: int  # unit part of root / p^e modulo p
    candidates: tuple[int, ...] = field(default=())


def _poly_roots_mod_p(cs: Sequence[int], p: int) -> list[tuple[int, int]]:
    """Nonzero roots of the polynomial mod p with multiplicities."""
    out = []
    for a in range(1, p):
        mult = 0
        poly = [c % p for c in cs]
        while len(poly) > 1 and sum(c * pow(a, i, p) for i, c in enumerate(poly)) % p == 0:
            mult += 1
            # synthetic division by (T - a)
            q = [0] * (len(poly) - 1)
            acc = 0
            for i in range(len(poly) - 1, 0, -1):
                acc = (acc * a + poly[i]) % p
                q[i - 1] = acc
            poly = q
        if mult:
            out.append((a, mult))
    return out


def locate_root(unit: PUnitData, p: int, prec: int) -> RootInfo:
    """The root of ``unit``'s polynomial in Q_p of valuation ``unit.valuation``.

    Substituting T = p^e U turns such roots into unit roots U; a simple
    nonzero root of the reduction is Hensel-lifted.  Several candidates raise
    :class:`EmbeddingAmbiguityError` unless ``unit.root_residue`` picks one.
    """
    e = unit.valuation
    cs = unit.integral_coefficients()
    # g(U) = f(p^e U), scaled to be primitive
    g = [Fraction(c) * Fraction(p) ** (e * i) for i, c in enumerate(cs)]
    den = 1
    for c in g:
        den = den * c.denominator // math.gcd(den, c.denominator)
    gi = [int(c * den) for c in g]
    content = 0
    for c in gi:
        content = math.gcd(content, c)
    gi = [c // content for c in gi]

    roots = _poly_roots_mod_p(gi, p)
    candidates = tuple(a for a, _ in roots)
    if not roots:
        raise ValueError(f"no root of valuation {e} in Q_{p} for {unit.label or 'the unit'}")
    if unit.root_residue is not None:
        chosen = [(a, m) for a, m in roots if a == unit.root_residue % p]
        if not chosen:
            raise ValueError(f"no root with residue {unit.root_residue}; candidates {candidates}")
    else:
        chosen = roots
    if len(chosen) > 1:
        raise EmbeddingAmbiguityError(
            f"{len(chosen)} roots of valuation {e} (residues {candidates}); "
            "choose one with root_residue"
        )
    a, mult = chosen[0]
    if mult > 1:
        raise EmbeddingAmbiguityError(f"root with residue {a} is repeated; it cannot be isolated")

    M = prec + GUARD_DIGITS
    mod = p**M
    dg = [i * c for i, c in enumerate(gi)][1:]
    U = a
    k = 1
    while k < M:
        k = min(2 * k, M)
        m = p**k
        fu = sum(c * pow(U, i, m) for i, c in enumerate(gi)) % m
        du = sum(c * pow(U, i, m) for i, c in enumerate(dg)) % m
        U = (U - fu * pow(du, -1, m)) % m
    U %= mod
    root = PadicNumber._make(p, e, U, e + prec)
    return RootInfo(root, a, candidates)


def l_invariant(
    phi: DirichletCharacter, p: int, prec: int = 30, unit: PUnitData | None = None
) -> PadicNumber:
    """L(phi) = log_p(iota(u)) / ord_p(iota(u)) for the p-unit attached to phi."""
    return l_invariant_details(phi, p, prec, unit)[0]


def l_invariant_details(
    phi: DirichletCharacter, p: int, prec: int = 30, unit: PUnitData | None = None
) -> tuple[PadicNumber, PUnitData, RootInfo]:
    check_setting(phi, p, irregular=True)
    if unit is None:
        if phi.discriminant is None:
            raise PreconditionError(
                f"{phi} is not quadratic: supply p-unit data for its L-invariant"
            )
        unit = split_prime_power_generator(phi.discriminant, p).unit_data()
    info = locate_root(unit, p, prec)
    L = iwasawa_log(info.root) / unit.valuation
    return L, unit, info


def nonvanishing_guard(
    l_phi: PadicNumber, l_phi_inv: PadicNumber, prec: int | None = None
) -> tuple[PadicNumber, PadicNumber, PadicNumber]:
    """Certify L(phi), L(phi^-1) and their sum are nonzero below the precision cap."""
    total = l_phi + l_phi_inv
    for name, val in (("L(phi)", l_phi), ("L(phi^-1)", l_phi_inv), ("L(phi)+L(phi^-1)", total)):
        cap = val.abs_precision if prec is None else min(val.abs_precision, prec)
        if val.iszero or val.valuation >= cap:
            raise PrecisionError(f"{name} is not distinguishable from 0; increase precision")
    return l_phi, l_phi_inv, total

