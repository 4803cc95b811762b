"""Dirichlet characters with values embedded in Z_p, Bernoulli numbers, L(chi, 1-k)."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Union

from .padic import PadicNumber, from_rational, teichmuller

__all__ = [
    "DirichletCharacter",
    "EmbeddingError",
    "bernoulli",
    "bernoulli_polynomial",
    "classical_L_nonpositive",
    "generalized_bernoulli",
    "kronecker",
    "parse_character",
    "primitive_root",
]

Scalar = Union[int, Fraction, PadicNumber]


class EmbeddingError(ValueError):
    """The character's values do not lie in Z_p (order does not divide p - 1)."""


def kronecker(d: int, n: int) -> int:
    """Kronecker symbol (d/n) for n >= 1."""
    if n <= 0:
        raise ValueError("kronecker symbol needs n >= 1")
    result = 1
    while n % 2 == 0:
        n //= 2
        if d % 2 == 0:
            return 0
        if d % 8 in (3, 5):
            result = -result
    # Jacobi symbol (d/n), n odd
    a = d % n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def is_fundamental_discriminant(d: int) -> bool:
    if d in (0, 1):
        return False
    if d % 4 == 1:
        return _squarefree(abs(d))
    if d % 4 == 0:
        m = d // 4
        return m % 4 in (2, 3) and _squarefree(abs(m))
    return False


def _squarefree(n: int) -> bool:
    k = 2
    while k * k <= n:
        if n % (k * k) == 0:
            return False
        k += 1
    return True


@lru_cache(maxsize=None)
def primitive_root(p: int) -> int:
    """Smallest primitive root modulo the odd prime p."""
    factors = _prime_factors(p - 1)
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in factors):
            return g
    if p == 3:
        return 2
    raise ValueError(f"no primitive root found for {p}")


def _prime_factors(n: int) -> list[int]:
    out = []
    k = 2
    while k * k <= n:
        if n % k == 0:
            out.append(k)
            while n % k == 0:
                n //= k
        k += 1
    if n > 1:
        out.append(n)
    return out


@dataclass(frozen=True)
class DirichletCharacter:
    """A character mod ``modulus`` with values in the ``order``-th roots of unity.

    ``table[a]`` is the exponent e with chi(a) = zeta_order^e, or -1 when
    gcd(a, modulus) > 1.  For quadratic characters ``discriminant`` is set.
    """

    modulus: int
    order: int
    table: tuple[int, ...] = field(repr=False)
    discriminant: int | None = None
    label: str = ""
    embedding_index: int = 1

    # -- constructors -----------------------------------------------------

    @classmethod
    def from_kronecker(cls, d: int) -> DirichletCharacter:
        if not is_fundamental_discriminant(d):
            raise ValueError(f"{d} is not a fundamental discriminant")
        N = abs(d)
        table = []
        for a in range(N):
            k = kronecker(d, a if a else N)
            table.append(-1 if k == 0 else (0 if k == 1 else 1))
        return cls(N, 2, tuple(table), discriminant=d, label=f"kronecker:{d}")

    @classmethod
    def from_generators(
        cls, modulus: int, images: dict[int, int], order: int, label: str = ""
    ) -> DirichletCharacter:
        """Character sending each generator g to zeta_order^images[g]."""
        N = modulus
        table = {1 % N: 0}
        frontier = [1 % N]
        while frontier:
            nxt = []
            for a in frontier:
                for g, e in images.items():
                    b = a * g % N
                    val = (table[a] + e) % order
                    if b in table:
                        if table[b] != val:
                            raise ValueError("generator images do not define a character")
                    else:
                        table[b] = val
                        nxt.append(b)
            frontier = nxt
        units = [a for a in range(N) if math.gcd(a, N) == 1]
        if len(table) != len(units):
            raise ValueError("the given elements do not generate (Z/N)^x")
        full = tuple(table.get(a, -1) for a in range(N))
        exps = [e for e in full if e >= 0]
        g = 0
        for e in exps:
            g = math.gcd(g, e)
        true_order = order // math.gcd(order, g) if g else 1
        if true_order != order:
            raise ValueError(f"character has order {true_order}, not {order}")
        return cls(N, order, full, label=label or f"mod:{N}")

    # -- basic data -------------------------------------------------------

    def exponent(self, a: int) -> int | None:
        e = self.table[a % self.modulus]
        return None if e < 0 else e

    @property
    def is_trivial(self) -> bool:
        return all(e <= 0 for e in self.table)

    @property
    def parity(self) -> int:
        """+1 for even, -1 for odd."""
        return 1 if self.exponent(-1) == 0 else -1

    @property
    def is_odd(self) -> bool:
        return self.parity == -1

    @property
    def conductor(self) -> int:
        N = self.modulus
        for f in sorted(d for d in range(1, N + 1) if N % d == 0):
            if all(
                self.table[a] == 0
                for a in range(1, N)
                if a % f == 1 % f and self.table[a] >= 0
            ):
                return f
        return N

    def inverse(self) -> DirichletCharacter:
        table = tuple(-1 if e < 0 else (-e) % self.order for e in self.table)
        label = self.label if self.order <= 2 else f"({self.label})^-1"
        return DirichletCharacter(
            self.modulus, self.order, table, self.discriminant, label, self.embedding_index
        )

    def primitive(self) -> DirichletCharacter:
        """The primitive character inducing this one."""
        f = self.conductor
        if f == self.modulus:
            return self
        table = []
        for a in range(f):
            if math.gcd(a, f) != 1:
                table.append(-1)
                continue
            b = a
            while math.gcd(b, self.modulus) != 1:
                b += f
            table.append(self.table[b % self.modulus])
        return DirichletCharacter(
            f, self.order, tuple(table), self.discriminant, self.label, self.embedding_index
        )

    def with_embedding(self, index: int) -> DirichletCharacter:
        """Same character, embedded via zeta_m -> omega(g)^((p-1) * index / m)."""
        if math.gcd(index, self.order) != 1:
            raise ValueError("embedding index must be coprime to the order")
        return DirichletCharacter(
            self.modulus, self.order, self.table, self.discriminant, self.label, index
        )

    # -- values -----------------------------------------------------------

    def exact(self, a: int) -> int:
        """Value in {-1, 0, 1}; only for characters of order at most 2."""
        if self.order > 2:
            raise EmbeddingError("exact values need a character of order <= 2")
        e = self.exponent(a)
        if e is None:
            return 0
        return 1 if e == 0 else -1

    def embeds_in(self, p: int) -> bool:
        return self.order <= 2 or (p - 1) % self.order == 0

    def embed(self, a: int, p: int, prec: int) -> PadicNumber | int:
        """chi(a) under zeta_m -> omega(g)^((p-1) * index / m), g the least primitive root mod p.

        Returns the exact int 0 when gcd(a, N) > 1.
        """
        e = self.exponent(a)
        if e is None:
            return 0
        if not self.embeds_in(p):
            raise EmbeddingError(
                f"order {self.order} does not divide {p}-1; no embedding into Z_{p}"
            )
        if self.order <= 2:
            return from_rational(1 if e == 0 else -1, 1, p, prec)
        k = (p - 1) // self.order * self.embedding_index * e % (p - 1)
        return teichmuller(pow(primitive_root(p), k, p), p, prec)

    def value(self, a: int, p: int | None = None, prec: int | None = None) -> Scalar:
        """Exact value for order <= 2, p-adic embedded value otherwise."""
        if self.order <= 2:
            return self.exact(a)
        if p is None or prec is None:
            raise EmbeddingError("a p-adic embedding (p, prec) is required")
        return self.embed(a, p, prec)

    def __call__(self, a: int) -> int:
        return self.exact(a)

    def __str__(self) -> str:
        return self.label or f"character mod {self.modulus} of order {self.order}"


def parse_character(spec: str) -> DirichletCharacter:
    """Parse ``kronecker:D`` or ``mod:N:g1=e1,g2=e2,order=m``."""
    parts = spec.strip().split(":")
    if parts[0] == "kronecker" and len(parts) == 2:
        return DirichletCharacter.from_kronecker(int(parts[1]))
    if parts[0] == "mod" and len(parts) == 3:
        N = int(parts[1])
        images: dict[int, int] = {}
        order = None
        for item in parts[2].split(","):
            key, _, val = item.partition("=")
            key = key.strip()
            if key == "order":
                order = int(val)
            else:
                images[int(key)] = int(val)
        if order is None:
            raise ValueError("tabulated character needs order=m")
        return DirichletCharacter.from_generators(N, images, order, label=spec.strip())
    raise ValueError(f"unrecognised character syntax: {spec!r}")


# -- Bernoulli numbers --------------------------------------------------------


@lru_cache(maxsize=None)
def _bernoulli_table(n: int) -> tuple[Fraction, ...]:
    B = [Fraction(1)]
    for m in range(1, n + 1):
        acc = Fraction(0)
        for j in range(m):
            acc += math.comb(m + 1, j) * B[j]
        B.append(-acc / (m + 1))
    return tuple(B)


def bernoulli(n: int) -> Fraction:
    """B_n with B_1 = -1/2."""
    size = max(n, 16)
    size = 1 << (size - 1).bit_length()
    return _bernoulli_table(size)[n]


def bernoulli_polynomial(k: int, x: Fraction) -> Fraction:
    x = Fraction(x)
    return sum((math.comb(k, j) * bernoulli(j) * x ** (k - j) for j in range(k + 1)), Fraction(0))


def generalized_bernoulli(
    chi: DirichletCharacter, k: int, p: int | None = None, prec: int | None = None
) -> Scalar:
    """B_{k,chi} = f^(k-1) * sum_{a=1}^{f} chi(a) B_k(a/f), f the conductor.

    Exact for characters of order <= 2; otherwise in Q_p via the embedding.
    """
    if k < 1:
        raise ValueError("k must be positive")
    prim = chi.primitive()
    f = prim.modulus
    total: Scalar = 0
    for a in range(1, f + 1):
        c = prim.value(a, p, prec)
        if isinstance(c, int) and c == 0:
            continue
        total = total + c * bernoulli_polynomial(k, Fraction(a, f))
    return total * f ** (k - 1)


def classical_L_nonpositive(
    chi: DirichletCharacter, k: int, p: int | None = None, prec: int | None = None
) -> Scalar:
    """L(chi, 1-k) = -B_{k,chi} / k."""
    if chi.is_trivial:
        raise ValueError("the trivial character is excluded")
    b = generalized_bernoulli(chi, k, p, prec)
    if isinstance(b, (int, Fraction)):
        return -Fraction(b) / k
    return -b / k
