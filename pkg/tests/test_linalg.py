from fractions import Fraction

from eiscurve.linalg import in_span, kernel, rank, row_echelon
from eiscurve.padic import from_rational


def test_rank_and_kernel_rational():
    rows = [[1, 2, 3], [2, 4, 6], [0, 1, 1]]
    assert rank(rows, 5) == 2
    ker = kernel(rows, 5)
    assert len(ker) == 1
    v = ker[0]
    for r in rows:
        assert sum(Fraction(a) * b for a, b in zip(r, v)) == 0


def test_padic_pivoting_prefers_units():
    p = 5
    a = from_rational(25, 1, p, 20)
    b = from_rational(3, 1, p, 20)
    ech, piv = row_echelon([[a, 1], [b, 2]], p)
    assert piv == [0, 1]
    assert (ech[0][0] - 1).iszero


def test_in_span_with_threshold():
    p = 7
    rows, piv = row_echelon([[1, 0, 0], [0, 1, 0]], p)
    ok, _ = in_span(rows, piv, [3, 4, 0], p)
    assert ok
    ok, _ = in_span(rows, piv, [3, 4, Fraction(1, 1)], p)
    assert not ok
    tiny = from_rational(7**15, 1, p, 20)
    ok, _ = in_span(rows, piv, [3, 4, tiny], p, threshold=10)
    assert ok
