"""Dense linear algebra over Q with Q_p entries mixed in.

Entries may be ints, Fractions or :class:`PadicNumber`.  Elimination picks the
pivot of least p-adic valuation in the current column.  An entry counts as
zero when it is an exact zero, carries the p-adic zero flag, or (with a
``threshold``) has valuation at least ``threshold``.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Any, Sequence

from .padic import PadicNumber, valuation

__all__ = ["entry_valuation", "in_span", "is_zero_entry", "kernel", "rank", "row_echelon"]

Vector = list


def entry_valuation(x: Any, p: int) -> float:
    if isinstance(x, PadicNumber):
        return x.valuation
    x = Fraction(x)
    if x == 0:
        return float("inf")
    return valuation(x.numerator, p) - valuation(x.denominator, p)


def is_zero_entry(x: Any, p: int, threshold: int | None = None) -> bool:
    if isinstance(x, PadicNumber):
        return x.is_zero(threshold)
    if x == 0:
        return True
    return threshold is not None and entry_valuation(x, p) >= threshold


def _normalize(x: Any) -> Any:
    return Fraction(x) if isinstance(x, int) else x


def row_echelon(
    rows: Sequence[Sequence[Any]], p: int, threshold: int | None = None
) -> tuple[list[Vector], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    m = [[_normalize(x) for x in r] for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        best, best_v = None, float("inf")
        for i in range(r, len(m)):
            if is_zero_entry(m[i][c], p, threshold):
                continue
            v = entry_valuation(m[i][c], p)
            if best is None or v < best_v:
                best, best_v = i, v
        if best is None:
            continue
        m[r], m[best] = m[best], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and not is_zero_entry(m[i][c], p):
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Sequence[Sequence[Any]], p: int, threshold: int | None = None) -> int:
    return len(row_echelon(rows, p, threshold)[1])


def kernel(rows: Sequence[Sequence[Any]], p: int, threshold: int | None = None) -> list[Vector]:
    """Basis of {v : rows . v = 0}."""
    if not rows:
        return []
    ncols = len(rows[0])
    ech, pivots = row_echelon(rows, p, threshold)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v: list[Any] = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for row, pc in zip(ech, pivots):
            v[pc] = -row[fc]
        basis.append(v)
    return basis


def in_span(
    ech: Sequence[Sequence[Any]], pivots: Sequence[int], v: Sequence[Any], p: int,
    threshold: int | None = None,
) -> tuple[bool, list[Any]]:
    """Reduce ``v`` by an echelon basis; returns (lies in span, residual)."""
    res = [_normalize(x) for x in v]
    for row, pc in zip(ech, pivots):
        f = res[pc]
        if is_zero_entry(f, p):
            continue
        res = [a - f * b for a, b in zip(res, row)]
    ok = all(is_zero_entry(x, p, threshold) for x in res)
    return ok, res
