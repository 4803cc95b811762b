"""Finite models of the local Hecke algebras at the irregular Eisenstein point.

Elements of (Lambda/X^Mx)^r are flat coordinate vectors: coordinate i*Mx + k
is the X^k coefficient of the i-th component.  The models are

    T      = {(a, b, c) : a(0) = b(0) = c(0)}                      dim 3Mx - 2
    T'     = T cut by (L(phi^-1)+L(phi)) a'(0) = L(phi^-1) b'(0) + L(phi) c'(0)
    T^ord  = {(a, b) : a(0) = b(0)}                                 dim 2Mx - 1

with components ordered (cuspidal, E_{1,phi}, E_{phi,1}).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

from .errors import PreconditionError
from .linalg import in_span, kernel, row_echelon
from .linvariant import nonvanishing_guard
from .padic import PadicNumber, PrecisionError
from .series import TruncatedSeries

__all__ = [
    "CongruenceReport",
    "FiberReport",
    "SubalgebraModel",
    "build_T",
    "build_Tord",
    "build_Tprime",
    "congruence_module",
    "cubic_relation",
    "element",
    "fiber_and_socle",
    "unit_element",
    "up_checks",
    "diagonal_x",
]


def _mul(u: Sequence[Any], v: Sequence[Any], r: int, mx: int) -> list[Any]:
    out: list[Any] = []
    for i in range(r):
        a, b = u[i * mx:(i + 1) * mx], v[i * mx:(i + 1) * mx]
        for k in range(mx):
            acc: Any = Fraction(0)
            for j in range(k + 1):
                x, y = a[j], b[k - j]
                if (not isinstance(x, PadicNumber) and x == 0) or (
                    not isinstance(y, PadicNumber) and y == 0
                ):
                    continue
                acc = acc + x * y
            out.append(acc)
    return out


def element(components: Sequence[TruncatedSeries | Sequence[Any]], mx: int) -> list[Any]:
    """Flatten a tuple of series into model coordinates."""
    out: list[Any] = []
    for c in components:
        cs = list(c.coeffs if isinstance(c, TruncatedSeries) else c)
        cs = cs[:mx] + [0] * (mx - len(cs))
        out.extend(Fraction(x) if isinstance(x, int) else x for x in cs)
    return out


def unit_element(r: int, mx: int) -> list[Any]:
    return element([[1]] * r, mx)


def diagonal_x(r: int, mx: int) -> list[Any]:
    return element([[0, 1]] * r, mx)


@dataclass
class SubalgebraModel:
    """A subalgebra of (Lambda/X^Mx)^r given by an echelon basis."""

    r: int
    mx: int
    basis: list[list[Any]]
    pivots: list[int]
    p: int
    label: str = ""
    threshold: int | None = None
    generators: dict[str, list[Any]] = field(default_factory=dict)

    @classmethod
    def from_spanning(cls, vectors, r, mx, p, label="", threshold=None, generators=None):
        ech, piv = row_echelon(vectors, p, threshold)
        return cls(r, mx, ech, piv, p, label, threshold, dict(generators or {}))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def mul(self, u, v) -> list[Any]:
        return _mul(u, v, self.r, self.mx)

    def contains(self, v) -> bool:
        return in_span(self.basis, self.pivots, v, self.p, self.threshold)[0]

    def closure_defect(self) -> int:
        """Number of basis products that fail to lie in the span (0 for an algebra)."""
        bad = 0
        for i, u in enumerate(self.basis):
            for v in self.basis[i:]:
                if not self.contains(self.mul(u, v)):
                    bad += 1
        return bad

    def is_algebra(self) -> bool:
        return (
            self.contains(unit_element(self.r, self.mx))
            and self.contains(diagonal_x(self.r, self.mx))
            and self.closure_defect() == 0
        )

    def generated_dimension(self, gens: Sequence[Sequence[Any]]) -> int:
        """Dimension of the subalgebra generated by 1 and ``gens`` (span saturation)."""
        span = [unit_element(self.r, self.mx)] + [list(g) for g in gens]
        ech, piv = row_echelon(span, self.p, self.threshold)
        while True:
            new = [self.mul(u, g) for u in ech for g in gens]
            ech2, piv2 = row_echelon(ech + new, self.p, self.threshold)
            if len(piv2) == len(piv):
                return len(piv)
            ech, piv = ech2, piv2

    def coordinate(self, i: int, k: int) -> int:
        return i * self.mx + k


def _fiber_product_basis(r: int, mx: int) -> list[list[Any]]:
    vecs = [unit_element(r, mx)]
    for i in range(r):
        for k in range(1, mx):
            v = [Fraction(0)] * (r * mx)
            v[i * mx + k] = Fraction(1)
            vecs.append(v)
    return vecs


def build_T(mx: int, p: int = 0) -> SubalgebraModel:
    """Lambda x_Qp Lambda x_Qp Lambda modulo X^Mx."""
    if mx < 3:
        raise ValueError("the T model needs Mx >= 3")
    return SubalgebraModel.from_spanning(_fiber_product_basis(3, mx), 3, mx, p or 2, "T")


def build_Tord(mx: int, p: int = 0) -> SubalgebraModel:
    """Lambda x_Qp Lambda modulo X^Mx, components (cuspidal, Eisenstein)."""
    if mx < 2:
        raise ValueError("the ordinary model needs Mx >= 2")
    return SubalgebraModel.from_spanning(_fiber_product_basis(2, mx), 2, mx, p or 2, "Tord")


def build_Tprime(
    l_phi: PadicNumber, l_phi_inv: PadicNumber, mx: int, guard: int = 5
) -> SubalgebraModel:
    """The subalgebra of T cut out by the linear relation among first derivatives."""
    if mx < 3:
        raise ValueError("the T' model needs Mx >= 3")
    _, _, total = nonvanishing_guard(l_phi, l_phi_inv)
    p = l_phi.p
    threshold = int(min(l_phi.abs_precision, l_phi_inv.abs_precision)) - guard
    T = _fiber_product_basis(3, mx)
    # functional: total*a1 - L(phi^-1) b1 - L(phi) c1
    func = [Fraction(0)] * (3 * mx)
    func[1], func[mx + 1], func[2 * mx + 1] = total, -l_phi_inv, -l_phi
    values = [[sum((f * x for f, x in zip(func, v) if not (isinstance(x, Fraction) and x == 0)),
                   Fraction(0)) for v in T]]
    combos = kernel(values, p, threshold)
    vecs = []
    for c in combos:
        w: list[Any] = [Fraction(0)] * (3 * mx)
        for coef, v in zip(c, T):
            if not isinstance(coef, PadicNumber) and coef == 0:
                continue
            w = [a + coef * b for a, b in zip(w, v)]
        vecs.append(w)
    Y = element([[0], [0, -l_phi], [0, l_phi_inv]], mx)
    model = SubalgebraModel.from_spanning(
        vecs, 3, mx, p, "T'", threshold, {"X": diagonal_x(3, mx), "Y": Y}
    )
    return model


def cubic_relation(model: SubalgebraModel, l_phi, l_phi_inv) -> list[Any]:
    """Y (Y + L(phi) X)(Y - L(phi^-1) X) in the model (should vanish)."""
    X = diagonal_x(model.r, model.mx)
    Y = model.generators["Y"]
    a = [y + l_phi * x for y, x in zip(Y, X)]
    b = [y - l_phi_inv * x for y, x in zip(Y, X)]
    return model.mul(model.mul(Y, a), b)


@dataclass
class FiberReport:
    label: str
    mx: int
    dim: int
    fiber_dim: int
    socle_dim: int
    x_regular: bool
    socle_basis: list[list[Any]] = field(default_factory=list)

    @property
    def gorenstein(self) -> bool:
        return self.socle_dim == 1


def _truncation_kernel_ok(A: SubalgebraModel) -> bool:
    """Multiplication by X is injective modulo the unavoidable top-degree kernel."""
    X = diagonal_x(A.r, A.mx)
    images = [A.mul(X, v) for v in A.basis]
    # kernel of v -> Xv on A, expressed in the basis
    cols = list(zip(*images))
    ker = kernel([list(c) for c in cols], A.p, A.threshold)
    for c in ker:
        v: list[Any] = [Fraction(0)] * (A.r * A.mx)
        for coef, b in zip(c, A.basis):
            if not isinstance(coef, PadicNumber) and coef == 0:
                continue
            v = [x + coef * y for x, y in zip(v, b)]
        for i in range(A.r):
            for k in range(A.mx - 1):
                x = v[i * A.mx + k]
                if isinstance(x, PadicNumber):
                    if not x.is_zero(A.threshold):
                        return False
                elif x != 0:
                    return False
    return True


def fiber_and_socle(A: SubalgebraModel) -> FiberReport:
    """Fiber A/XA, its maximal ideal and socle; Gorenstein iff the socle is a line."""
    regular = _truncation_kernel_ok(A)
    if not regular:
        raise PreconditionError(f"X is not regular on the model {A.label}: malformed model")
    X = diagonal_x(A.r, A.mx)
    XA = [A.mul(X, v) for v in A.basis]
    W, Wp = row_echelon(XA, A.p, A.threshold)
    fiber_dim = A.dim - len(Wp)

    # maximal ideal of A: elements with vanishing constant coordinates
    const = [[v[i * A.mx] for v in A.basis] for i in range(A.r)]
    mcombos = kernel(const, A.p, A.threshold)
    m_elems = []
    for c in mcombos:
        v: list[Any] = [Fraction(0)] * (A.r * A.mx)
        for coef, b in zip(c, A.basis):
            if not isinstance(coef, PadicNumber) and coef == 0:
                continue
            v = [x + coef * y for x, y in zip(v, b)]
        m_elems.append(v)

    # s = sum c_i a_i is in the socle iff s * m_j lies in XA for every j
    rows: list[list[Any]] = []
    for mj in m_elems:
        residues = [in_span(W, Wp, A.mul(a, mj), A.p, A.threshold)[1] for a in A.basis]
        for coord in range(A.r * A.mx):
            rows.append([res[coord] for res in residues])
    sol = kernel(rows, A.p, A.threshold) if rows else [[Fraction(int(i == j)) for j in range(A.dim)]
                                                        for i in range(A.dim)]
    socle_vectors = []
    for c in sol:
        v = [Fraction(0)] * (A.r * A.mx)
        for coef, b in zip(c, A.basis):
            if not isinstance(coef, PadicNumber) and coef == 0:
                continue
            v = [x + coef * y for x, y in zip(v, b)]
        socle_vectors.append(v)
    # socle of the fiber = solutions modulo XA
    ech, piv = row_echelon(W + socle_vectors, A.p, A.threshold)
    socle_dim = len(piv) - len(Wp)
    reps = [v for v in socle_vectors if not in_span(W, Wp, v, A.p, A.threshold)[0]]
    return FiberReport(A.label, A.mx, A.dim, fiber_dim, socle_dim, regular, reps[:socle_dim])


@dataclass
class CongruenceReport:
    mx: int
    j_eis_dim: int
    j_eis_is_x: bool
    length_quotient: int
    ord_zeta: int
    unit_at_zero: PadicNumber
    annihilator_image_is_x: bool

    @property
    def lengths_match(self) -> bool:
        return self.length_quotient == self.ord_zeta


def congruence_module(zeta, mx: int | None = None) -> CongruenceReport:
    """J_eis = pi_cusp(ker pi_eis) in T^ord, compared with (zeta_phi) in Lambda."""
    series = zeta.series if hasattr(zeta, "series") else zeta
    mx = series.mx if mx is None else mx
    if mx < 2:
        raise ValueError("need Mx >= 2")
    z0, z1 = series[0], series[1]
    if not z0.iszero:
        raise PreconditionError("zeta_phi(0) != 0: no trivial zero")
    if z1.iszero:
        raise PrecisionError("zeta_phi'(0) not certified nonzero; increase precision")
    p = z1.p
    A = build_Tord(mx, p)
    # ker pi_eis: elements whose Eisenstein component vanishes
    eis = [[v[mx + k] for v in A.basis] for k in range(mx)]
    combos = kernel(eis, p)
    kernel_elems = []
    for c in combos:
        v = [Fraction(0)] * (2 * mx)
        for coef, b in zip(c, A.basis):
            v = [x + coef * y for x, y in zip(v, b)]
        kernel_elems.append(v)
    cusp_images = [v[:mx] for v in kernel_elems]
    ech, piv = row_echelon(cusp_images, p)
    ideal_x = [[Fraction(int(i == k)) for i in range(mx)] for k in range(1, mx)]
    ech_x, piv_x = row_echelon(ideal_x, p)
    same = piv == piv_x and all(in_span(ech_x, piv_x, v, p)[0] for v in cusp_images)
    length = mx - len(piv)

    # Ann(ker pi_eis) and its image under pi_eis
    rows = []
    for kvec in kernel_elems:
        prods = [A.mul(a, kvec) for a in A.basis]
        for coord in range(2 * mx):
            rows.append([pr[coord] for pr in prods])
    ann = kernel(rows, p)
    ann_elems = []
    for c in ann:
        v = [Fraction(0)] * (2 * mx)
        for coef, b in zip(c, A.basis):
            v = [x + coef * y for x, y in zip(v, b)]
        ann_elems.append(v[mx:])
    ech_a, piv_a = row_echelon(ann_elems, p) if ann_elems else ([], [])
    ann_is_x = piv_a == piv_x

    # zeta = u * X with u a unit, so length(Lambda/(zeta)) = ord_X zeta
    ord_zeta = series.order()
    u0 = series[ord_zeta]
    return CongruenceReport(mx, len(piv), same, length, ord_zeta, u0, ann_is_x)


def up_checks(T: SubalgebraModel, Tp: SubalgebraModel, slope: PadicNumber) -> dict[str, bool]:
    """U_p - 1 = (slope X, 0, 0) with slope = a_p(F)'(0): position relative to T' and T."""
    mx = T.mx
    U1 = element([[0, slope], [0], [0]], mx)
    X = diagonal_x(3, mx)
    XT, piv = row_echelon([T.mul(X, v) for v in T.basis], T.p, Tp.threshold)
    sq = T.mul(U1, U1)
    gens = [Tp.generators["X"], Tp.generators["Y"], U1]
    return {
        "in_T": T.contains(U1),
        "not_in_Tprime": not Tp.contains(U1),
        "square_in_XT": in_span(XT, piv, sq, T.p, Tp.threshold)[0],
        "nonzero_in_fiber": not in_span(XT, piv, U1, T.p, Tp.threshold)[0],
        "Tprime_adjoin_Up_is_T": Tp.generated_dimension(gens) == T.dim,
    }
