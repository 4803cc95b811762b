"""Truncated power series c_0 + c_1 X + ... + c_{Mx-1} X^{Mx-1} + O(X^Mx).

Coefficients may be ints, Fractions, :class:`PadicNumber` or nested
:class:`TruncatedSeries`; the class only needs ``+``, ``-``, ``*`` and, for
inversion and composition of scaled inputs, ``/`` on them.  The same class
models the Iwasawa algebra modulo X^Mx and jets in an auxiliary variable s.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Any, Callable, Iterable, Sequence

from .padic import PadicNumber, iwasawa_log

__all__ = [
    "TruncatedSeries",
    "agreement_digits",
    "binomial_power",
    "compose",
    "derivative",
    "exp_series",
    "log1p_series",
]


def _is_exact_zero(c: Any) -> bool:
    if isinstance(c, (int, Fraction)):
        return c == 0
    if isinstance(c, PadicNumber):
        return c.iszero and c.abs_precision == float("inf")
    if isinstance(c, TruncatedSeries):
        return all(_is_exact_zero(x) for x in c.coeffs)
    return False


class TruncatedSeries:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Any], mx: int | None = None):
        cs = list(coeffs)
        if mx is not None:
            if mx < 1:
                raise ValueError("truncation must be positive")
            cs = cs[:mx] + [0] * (mx - len(cs))
        if not cs:
            raise ValueError("a truncated series needs at least one coefficient")
        self.coeffs = tuple(cs)

    @classmethod
    def constant(cls, c: Any, mx: int) -> TruncatedSeries:
        return cls([c], mx)

    @classmethod
    def variable(cls, mx: int, scale: Any = 1) -> TruncatedSeries:
        """The series ``scale * X`` modulo X^mx."""
        return cls([0, scale], mx)

    @property
    def mx(self) -> int:
        return len(self.coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, k: int) -> Any:
        return self.coeffs[k]

    def __iter__(self):
        return iter(self.coeffs)

    def __repr__(self) -> str:
        terms = []
        for k, c in enumerate(self.coeffs):
            if _is_exact_zero(c):
                continue
            mono = "" if k == 0 else ("X" if k == 1 else f"X^{k}")
            terms.append(f"({c}){'*' + mono if mono else ''}")
        body = " + ".join(terms) if terms else "0"
        return f"{body} + O(X^{self.mx})"

    # -- ring structure ---------------------------------------------------

    def _lift(self, other) -> TruncatedSeries | None:
        if isinstance(other, TruncatedSeries):
            return other
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return TruncatedSeries((self.coeffs[0] + other,) + self.coeffs[1:])
        n = min(self.mx, o.mx)
        return TruncatedSeries([a + b for a, b in zip(self.coeffs[:n], o.coeffs[:n])])

    __radd__ = __add__

    def __neg__(self) -> TruncatedSeries:
        return TruncatedSeries([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return TruncatedSeries([c * other for c in self.coeffs])
        n = min(self.mx, o.mx)
        a, b = self.coeffs, o.coeffs
        out: list[Any] = []
        for k in range(n):
            acc: Any = 0
            for i in range(k + 1):
                if _is_exact_zero(a[i]) or _is_exact_zero(b[k - i]):
                    continue
                acc = acc + a[i] * b[k - i]
            out.append(acc)
        return TruncatedSeries(out)

    def __rmul__(self, other):
        return TruncatedSeries([other * c for c in self.coeffs])

    def __pow__(self, n: int) -> TruncatedSeries:
        if n < 0:
            return self.inverse() ** (-n)
        result = TruncatedSeries.constant(1, self.mx)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self) -> TruncatedSeries:
        """Multiplicative inverse; the constant term must be invertible."""
        c0 = self.coeffs[0]
        inv0 = 1 / c0 if not isinstance(c0, int) else Fraction(1, c0)
        out = [inv0]
        for k in range(1, self.mx):
            acc: Any = 0
            for i in range(1, k + 1):
                if _is_exact_zero(self.coeffs[i]):
                    continue
                acc = acc + self.coeffs[i] * out[k - i]
            out.append(-acc * inv0)
        return TruncatedSeries(out)

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            if isinstance(other, int):
                other = Fraction(other)
            return TruncatedSeries([c / other for c in self.coeffs])
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    # -- calculus ---------------------------------------------------------

    def derivative(self) -> TruncatedSeries:
        """d/dX; the result has truncation Mx - 1 (at least 1)."""
        if self.mx == 1:
            return TruncatedSeries([0])
        return TruncatedSeries([k * c for k, c in enumerate(self.coeffs) if k > 0])

    def __call__(self, inner: TruncatedSeries) -> TruncatedSeries:
        return compose(self, inner)

    def evaluate(self, x: Any) -> Any:
        """Horner evaluation of the truncated polynomial at ``x``."""
        acc: Any = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def truncate(self, mx: int) -> TruncatedSeries:
        return TruncatedSeries(self.coeffs[:mx], mx)

    def map(self, f: Callable[[Any], Any]) -> TruncatedSeries:
        return TruncatedSeries([f(c) for c in self.coeffs])

    def order(self, threshold: int | None = None) -> int | None:
        """Index of the first coefficient not zero (at ``threshold`` for p-adic coefficients)."""
        for k, c in enumerate(self.coeffs):
            if isinstance(c, PadicNumber):
                if not c.is_zero(threshold):
                    return k
            elif isinstance(c, TruncatedSeries):
                if c.order(threshold) is not None:
                    return k
            elif c != 0:
                return k
        return None


def derivative(f: TruncatedSeries) -> TruncatedSeries:
    return f.derivative()


def compose(outer: TruncatedSeries, inner: TruncatedSeries) -> TruncatedSeries:
    """outer(inner(X)) modulo X^min(Mx); the inner series must have zero constant term."""
    if not _is_exact_zero(inner.coeffs[0]):
        raise ValueError("composition needs an inner series with zero constant term")
    mx = min(outer.mx, inner.mx)
    inner = inner.truncate(mx)
    acc = TruncatedSeries.constant(outer.coeffs[mx - 1], mx)
    for c in reversed(outer.coeffs[: mx - 1]):
        acc = acc * inner + c
    return acc


def exp_series(mx: int, scale: Any = 1) -> TruncatedSeries:
    """exp(scale * X) modulo X^mx, coefficients scale^k / k!."""
    out: list[Any] = [1]
    term: Any = Fraction(1)
    for k in range(1, mx):
        term = term * scale / k if not isinstance(scale, int) else term * Fraction(scale, k)
        out.append(term)
    return TruncatedSeries(out)


def log1p_series(mx: int) -> TruncatedSeries:
    """log(1 + X) modulo X^mx with exact rational coefficients."""
    return TruncatedSeries([0] + [Fraction((-1) ** (k + 1), k) for k in range(1, mx)])


def binomial_power(alpha: Any, mx: int) -> TruncatedSeries:
    """(1 + X)^alpha = sum_k binom(alpha, k) X^k modulo X^mx."""
    out: list[Any] = [1]
    c: Any = 1
    for k in range(1, mx):
        step = alpha - (k - 1)
        c = c * step / k if not isinstance(step, int) else c * Fraction(step, k)
        out.append(c)
    return TruncatedSeries(out)


def cyclotomic_exponent(n: int, p: int, prec: int) -> PadicNumber:
    """log_p(n) / log_p(1+p): the exponent with (1+p)^exponent = <n>."""
    from .padic import from_rational

    return iwasawa_log(from_rational(n, 1, p, prec)) / iwasawa_log(from_rational(1 + p, 1, p, prec))


def padic_series(coeffs: Sequence[Any], p: int, prec: int) -> TruncatedSeries:
    """Embed exact rational coefficients into Q_p."""
    from .padic import _as_padic

    return TruncatedSeries([_as_padic(c, p, prec) for c in coeffs])


def _valuation_of(x: Any, p: int) -> int | float:
    if isinstance(x, PadicNumber):
        return x.valuation
    if isinstance(x, TruncatedSeries):
        return min((_valuation_of(c, p) for c in x.coeffs), default=float("inf"))
    x = Fraction(x)
    if x == 0:
        return float("inf")
    from .padic import valuation

    return valuation(x.numerator, p) - valuation(x.denominator, p)


def agreement_digits(a: Any, b: Any, p: int, relative: bool = False) -> int | float:
    """p-adic digits on which ``a`` and ``b`` agree.

    Scalars and truncated series (coefficientwise minimum) are accepted.  The
    default measures v(a - b) against max(|a|, |b|, 1); ``relative`` measures
    it against max(|a|, |b|) only.
    """
    if isinstance(a, TruncatedSeries) or isinstance(b, TruncatedSeries):
        sa = a if isinstance(a, TruncatedSeries) else TruncatedSeries([a])
        sb = b if isinstance(b, TruncatedSeries) else TruncatedSeries([b])
        n = max(sa.mx, sb.mx)
        ca = list(sa.coeffs) + [0] * (n - sa.mx)
        cb = list(sb.coeffs) + [0] * (n - sb.mx)
        return min(agreement_digits(x, y, p, relative) for x, y in zip(ca, cb))
    diff = a - b
    va, vb = _valuation_of(a, p), _valuation_of(b, p)
    ref = min(va, vb) if relative else min(0, va, vb)
    d = _valuation_of(diff, p)
    if ref == float("inf"):
        return d
    return d - ref
