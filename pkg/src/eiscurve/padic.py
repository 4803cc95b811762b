"""Capped-precision p-adic numbers.

A nonzero element is stored as ``p**valuation * unit`` where ``unit`` is an
integer coprime to ``p`` known modulo ``p**precision``.  A zero element only
records how far it is known to vanish: its absolute precision (``math.inf``
for an exact zero).

Precision is propagated pessimistically:

* addition keeps the smaller absolute precision,
* multiplication and division keep the smaller relative precision,
* nothing ever claims more digits than the inputs justify.

Equality is deliberately not overloaded; use :meth:`PadicNumber.agrees` or
:meth:`PadicNumber.digits_of_agreement` with an explicit threshold.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

__all__ = [
    "PadicNumber",
    "PrecisionError",
    "from_rational",
    "teichmuller",
    "iwasawa_log",
    "valuation",
]


# digits given to an exact rational when it meets an exact zero
EXACT_COERCION_DIGITS = 64


class PrecisionError(ArithmeticError):
    """Raised when a quantity is indistinguishable from zero at the working precision."""


def valuation(n: int | Fraction, p: int) -> int | float:
    """p-adic valuation of an exact rational (``math.inf`` for 0)."""
    if n == 0:
        return math.inf
    if isinstance(n, Fraction):
        return valuation(n.numerator, p) - valuation(n.denominator, p)
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


class PadicNumber:
    __slots__ = ("p", "unit", "_val", "precision")

    def __init__(self, p: int, valuation: int | float, unit: int, precision: int):
        # Raw constructor; callers are expected to pass normalized data.
        self.p = p
        self._val = valuation
        self.unit = unit
        self.precision = precision

    # -- construction -----------------------------------------------------

    @classmethod
    def _make(cls, p: int, v: int, x: int, absprec: int | float) -> PadicNumber:
        """Normalize the value ``x * p**v`` known modulo ``p**absprec``."""
        if absprec == math.inf:
            if x != 0:
                raise ValueError("only zero may carry infinite precision")
            return cls(p, math.inf, 0, 0)
        if absprec <= v:
            return cls(p, absprec, 0, 0)
        x %= p ** (absprec - v)
        if x == 0:
            return cls(p, absprec, 0, 0)
        while x % p == 0:
            x //= p
            v += 1
        prec = absprec - v
        return cls(p, v, x % p**prec, prec)

    @classmethod
    def zero(cls, p: int, absprec: int | float = math.inf) -> PadicNumber:
        return cls(p, absprec, 0, 0)

    @classmethod
    def from_int(cls, n: int, p: int, prec: int) -> PadicNumber:
        return from_rational(n, 1, p, prec)

    # -- basic properties -------------------------------------------------

    @property
    def iszero(self) -> bool:
        """True when the element is indistinguishable from zero (zero flag)."""
        return self.unit == 0

    @property
    def valuation(self) -> int | float:
        """Valuation; for a zero element, the known lower bound (its absolute precision)."""
        return self._val

    @property
    def abs_precision(self) -> int | float:
        if self.unit == 0:
            return self._val
        return self._val + self.precision

    def is_zero(self, threshold: int | None = None) -> bool:
        """Zero flag, or (with ``threshold``) valuation at least ``threshold``."""
        if self.unit == 0:
            return True
        return threshold is not None and self._val >= threshold

    def digits(self) -> list[int]:
        """Base-p digits of the unit part, little-endian, ``precision`` of them."""
        out = []
        u = self.unit
        for _ in range(self.precision):
            u, d = divmod(u, self.p)
            out.append(d)
        return out

    def lift(self) -> Fraction:
        """A rational representative (integer when the valuation is nonnegative)."""
        if self.unit == 0:
            return Fraction(0)
        return Fraction(self.unit) * Fraction(self.p) ** self._val

    def lift_centered(self) -> Fraction:
        """Representative with the unit reduced into (-p^M/2, p^M/2]."""
        if self.unit == 0:
            return Fraction(0)
        mod = self.p**self.precision
        u = self.unit if self.unit <= mod // 2 else self.unit - mod
        return Fraction(u) * Fraction(self.p) ** self._val

    def residue(self) -> int:
        """Image in Z/p (requires nonnegative valuation)."""
        if self.unit == 0 or self._val > 0:
            if self.abs_precision < 1:
                raise PrecisionError("residue not determined at this precision")
            return 0
        if self._val < 0:
            raise ValueError("element is not p-integral")
        return self.unit % self.p

    def unit_part(self) -> PadicNumber:
        if self.unit == 0:
            raise PrecisionError("zero has no unit part")
        return PadicNumber(self.p, 0, self.unit, self.precision)

    def with_precision(self, absprec: int) -> PadicNumber:
        """Drop digits so that the absolute precision is at most ``absprec``."""
        if absprec >= self.abs_precision:
            return self
        return PadicNumber._make(self.p, self._val if self.unit else absprec, self.unit, absprec)

    # -- coercion ---------------------------------------------------------

    def _coerce(self, other) -> PadicNumber:
        if isinstance(other, PadicNumber):
            if other.p != self.p:
                raise ValueError(f"mixing {self.p}-adic and {other.p}-adic numbers")
            return other
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return PadicNumber.zero(self.p)
            v = valuation(other, self.p)
            # enough digits that neither + nor * is limited by the exact operand
            absprec = self.abs_precision
            if absprec == math.inf:
                rel = EXACT_COERCION_DIGITS
            else:
                rel = max(self.precision, absprec - v, 1)
            a = Fraction(other)
            return from_rational(a.numerator, a.denominator, self.p, rel)
        return NotImplemented

    # -- arithmetic -------------------------------------------------------

    def __neg__(self) -> PadicNumber:
        if self.unit == 0:
            return self
        return PadicNumber(self.p, self._val, (-self.unit) % self.p**self.precision, self.precision)

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        n = min(self.abs_precision, other.abs_precision)
        if self.unit == 0:
            return other.with_precision(n) if other.unit else PadicNumber.zero(self.p, n)
        if other.unit == 0:
            return self.with_precision(n)
        v = min(self._val, other._val)
        x = self.unit * self.p ** (self._val - v) + other.unit * self.p ** (other._val - v)
        return PadicNumber._make(self.p, v, x, n)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.unit == 0 or other.unit == 0:
            return PadicNumber.zero(self.p, _zero_product_precision(self, other))
        prec = min(self.precision, other.precision)
        mod = self.p**prec
        return PadicNumber(self.p, self._val + other._val, self.unit * other.unit % mod, prec)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.unit == 0:
            if other.abs_precision == math.inf:
                raise ZeroDivisionError("p-adic division by zero")
            raise PrecisionError(
                f"divisor indistinguishable from 0 mod {self.p}^{other.abs_precision}"
            )
        if self.unit == 0:
            return PadicNumber.zero(self.p, self._val - other._val)
        prec = min(self.precision, other.precision)
        mod = self.p**prec
        return PadicNumber(
            self.p, self._val - other._val, self.unit * pow(other.unit, -1, mod) % mod, prec
        )

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __pow__(self, n: int) -> PadicNumber:
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return 1 / self ** (-n)
        if n == 0:
            return from_rational(1, 1, self.p, max(self.precision, 1))
        if self.unit == 0:
            return PadicNumber.zero(self.p, self._val * n)
        mod = self.p**self.precision
        return PadicNumber(self.p, self._val * n, pow(self.unit, n, mod), self.precision)

    # -- comparison -------------------------------------------------------

    def digits_of_agreement(self, other) -> int | float:
        """Absolute p-adic digits on which ``self`` and ``other`` agree: v(self - other)."""
        return (self - other).valuation

    def agrees(self, other, t: int) -> bool:
        """True when ``self ≡ other (mod p**t)`` is established at the known precision."""
        diff = self - other
        return diff.valuation >= t

    def relative_agreement(self, other) -> int | float:
        """Significant digits of agreement: v(self - other) - v(self)."""
        ref = min(self.valuation, self._coerce(other).valuation)
        return (self - other).valuation - ref

    # -- display ----------------------------------------------------------

    def __repr__(self) -> str:
        if self.unit == 0:
            if self._val == math.inf:
                return "0"
            return f"O({self.p}^{self._val})"
        terms = []
        for i, d in enumerate(self.digits()):
            if d == 0:
                continue
            e = self._val + i
            if e == 0:
                terms.append(str(d))
            elif e == 1:
                terms.append(f"{d}*{self.p}" if d != 1 else f"{self.p}")
            else:
                terms.append(f"{d}*{self.p}^{e}" if d != 1 else f"{self.p}^{e}")
            if len(terms) >= 6:
                terms.append("...")
                break
        terms.append(f"O({self.p}^{self.abs_precision})")
        return " + ".join(terms)

    def to_json(self) -> dict:
        if self.unit == 0:
            absprec = None if self._val == math.inf else self._val
            return {
                "p": self.p,
                "valuation": None,
                "unit_digits": [],
                "precision": 0,
                "absolute_precision": absprec,
            }
        return {
            "p": self.p,
            "valuation": self._val,
            "unit_digits": self.digits(),
            "precision": self.precision,
        }

    @classmethod
    def from_json(cls, data: dict) -> PadicNumber:
        p = data["p"]
        if data["valuation"] is None:
            absprec = data.get("absolute_precision")
            return cls.zero(p, math.inf if absprec is None else absprec)
        unit = sum(d * p**i for i, d in enumerate(data["unit_digits"]))
        return cls(p, data["valuation"], unit, data["precision"])


def _zero_product_precision(a: PadicNumber, b: PadicNumber) -> int | float:
    # v(a*b) >= v(a) + v(b) with the zero factor contributing its absolute precision
    return a.valuation + b.valuation


def from_rational(a: int, b: int, p: int, M: int) -> PadicNumber:
    """The image of a/b in Q_p with ``M`` significant digits."""
    if b == 0:
        raise ZeroDivisionError("denominator is zero")
    if p % 2 == 0:
        raise ValueError("only odd primes are supported")
    if a == 0:
        return PadicNumber.zero(p)
    va = valuation(a, p)
    vb = valuation(b, p)
    ua = a // p**va
    ub = b // p**vb
    mod = p**M
    return PadicNumber(p, va - vb, ua * pow(ub, -1, mod) % mod, M)


def _as_padic(x, p: int, M: int) -> PadicNumber:
    if isinstance(x, PadicNumber):
        return x
    x = Fraction(x)
    return from_rational(x.numerator, x.denominator, p, M)


@lru_cache(maxsize=4096)
def _teichmuller_int(r: int, p: int, M: int) -> int:
    # u^(p^(M-1)) ≡ ω(u) mod p^M for any u ≡ r mod p
    return pow(r, p ** (M - 1), p**M)


def teichmuller(u: PadicNumber | int, p: int | None = None, M: int | None = None) -> PadicNumber:
    """The (p-1)-st root of unity congruent to ``u`` mod p."""
    if not isinstance(u, PadicNumber):
        if p is None or M is None:
            raise TypeError("integer input needs p and M")
        u = from_rational(u, 1, p, M)
    if u.iszero or u.valuation != 0:
        raise ValueError("Teichmüller lift needs a unit")
    p, M = u.p, u.precision
    return PadicNumber(p, 0, _teichmuller_int(u.unit % p, p, M), M)


def _log1p_int(z: int, vz: int, p: int, N: int) -> tuple[int, int]:
    """log(1+z) for z ≡ 0 mod p known mod p^N; returns (S, e) with log = S / p^e mod p^N."""
    # find the last term that can affect the result modulo p^N
    kmax = 0
    k = 1
    while True:
        vk = int(math.log(k, p) + 1e-9)
        if k * vz - vk >= N:
            break
        kmax = k
        k += 1
    e = 0
    while p ** (e + 1) <= kmax:
        e += 1
    mod = p ** (N + e)
    total = 0
    zk = 1
    for k in range(1, kmax + 1):
        zk = zk * z % mod
        vk = 0
        kk = k
        while kk % p == 0:
            kk //= p
            vk += 1
        term = zk * p ** (e - vk) % mod * pow(kk, -1, mod)
        total += term if k % 2 else -term
    return total % mod, e


def log1p(z: PadicNumber) -> PadicNumber:
    """log(1+z) by its power series; requires v(z) >= 1."""
    p = z.p
    if z.iszero:
        return PadicNumber.zero(p, z.abs_precision)
    if z.valuation < 1:
        raise ValueError("log series needs v(z) >= 1")
    N = z.abs_precision
    zi = z.unit * p**z.valuation
    s, e = _log1p_int(zi, z.valuation, p, N)
    return PadicNumber._make(p, -e, s, N)


def iwasawa_log(x: PadicNumber) -> PadicNumber:
    """p-adic logarithm on the branch with log_p(p) = 0."""
    if x.iszero:
        raise PrecisionError("logarithm of an element indistinguishable from 0")
    u = x.unit_part()
    w = teichmuller(u)
    return log1p(u / w - 1)
