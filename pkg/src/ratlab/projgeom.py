"""Projective geometry primitives and the classical maps built on them.

Maps are returned as explicit coordinate polynomials so they can be
serialized and re-checked; nothing here stores closures.
"""

from __future__ import annotations

from dataclasses import dataclass

from .exactnum import MultiPoly, det_laplace, gradient, nullspace, rref


class GeometryError(ValueError):
    pass


def _normalize(coords, field):
    coords = [field(c) for c in coords]
    lead = next((c for c in coords if c), None)
    if lead is None:
        raise GeometryError("the zero vector is not a projective point")
    if lead != 1:
        inv = 1 / lead
        coords = [c * inv for c in coords]
    return tuple(coords)


@dataclass(frozen=True)
class ProjPoint:
    coords: tuple
    field: object

    @classmethod
    def of(cls, coords, field) -> "ProjPoint":
        return cls(_normalize(coords, field), field)

    @property
    def dim(self) -> int:
        return len(self.coords) - 1

    def __eq__(self, other):
        return isinstance(other, ProjPoint) and self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def __str__(self):
        return "[" + ":".join(str(c) for c in self.coords) + "]"


@dataclass(frozen=True)
class ProjLine3:
    """A line of P^3 stored as the RREF of two linear forms cutting it."""

    rows: tuple
    field: object

    @classmethod
    def from_forms(cls, forms, field) -> "ProjLine3":
        red, pivots = rref(forms, field)
        if len(pivots) != 2 or len(red[0]) != 4:
            raise GeometryError("two independent linear forms in 4 variables are required")
        return cls(tuple(tuple(r) for r in red), field)

    def kernel_points(self) -> tuple[ProjPoint, ProjPoint]:
        """Two points spanning the line (the RREF kernel basis)."""
        p, q = nullspace([list(r) for r in self.rows], self.field, 4)
        return ProjPoint.of(p, self.field), ProjPoint.of(q, self.field)

    def contains(self, P: ProjPoint) -> bool:
        return all(not sum((a * x for a, x in zip(row, P.coords)), self.field.zero) for row in self.rows)

    def key(self):
        return self.rows

    def to_strings(self):
        return [[str(c) for c in row] for row in self.rows]

    def __eq__(self, other):
        return isinstance(other, ProjLine3) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __str__(self):
        names = ("x0", "x1", "x2", "x3")
        eqs = []
        for row in self.rows:
            eqs.append(MultiPoly.linear_form(row, self.field).to_str(names) + " = 0")
        return "{" + ", ".join(eqs) + "}"


@dataclass(frozen=True)
class HyperForm:
    degree: int
    form: MultiPoly

    def __post_init__(self):
        if not self.form.is_homogeneous(self.degree):
            raise GeometryError(f"form is not homogeneous of degree {self.degree}")

    @classmethod
    def of(cls, form: MultiPoly) -> "HyperForm":
        return cls(form.degree(), form)

    @property
    def field(self):
        return self.form.field

    @property
    def nvars(self) -> int:
        return self.form.nvars

    def __call__(self, P):
        coords = P.coords if isinstance(P, ProjPoint) else P
        return self.form.evaluate(list(coords))

    def __str__(self):
        return self.form.to_str()


def line_from_points(P: ProjPoint, Q: ProjPoint) -> ProjLine3:
    if len(P.coords) != 4 or len(Q.coords) != 4:
        raise GeometryError("lines are only supported in P^3")
    if P == Q:
        raise GeometryError("a line needs two distinct points")
    forms = nullspace([list(P.coords), list(Q.coords)], P.field, 4)
    return ProjLine3.from_forms(forms, P.field)


def lines_meet(L1: ProjLine3, L2: ProjLine3) -> bool:
    """True iff the four cutting forms are dependent (a common point)."""
    mat = [list(r) for r in L1.rows] + [list(r) for r in L2.rows]
    return not det_laplace(mat, L1.field.zero)


def restrict_to_line(F: HyperForm, P, Q) -> list:
    """Coefficients of F(sP + tQ), listed as s^d, s^(d-1) t, ..., t^d."""
    field = F.field
    s, t = MultiPoly.gens(2, field)
    p = P.coords if isinstance(P, ProjPoint) else P
    q = Q.coords if isinstance(Q, ProjPoint) else Q
    sub = [s * a + t * b for a, b in zip(p, q)]
    g = F.form.compose(sub)
    d = F.degree
    return [g.coefficient((d - i, i)) for i in range(d + 1)]


def line_on_surface(F: HyperForm, L: ProjLine3) -> bool:
    if F.nvars != 4:
        raise GeometryError("line containment is defined for surfaces in P^3")
    P, Q = L.kernel_points()
    return not any(restrict_to_line(F, P, Q))


def third_point(F: HyperForm, P: ProjPoint, Q: ProjPoint) -> ProjPoint:
    """Residual intersection of the line PQ with the cubic F.

    Returns P (or Q) when the line is tangent there.
    """
    if F.degree != 3:
        raise GeometryError("third_point needs a cubic")
    if P == Q:
        raise GeometryError("P and Q must be distinct")
    if F(P) or F(Q):
        raise GeometryError("P and Q must lie on the cubic")
    c = restrict_to_line(F, P, Q)
    assert not c[0] and not c[3]
    alpha, beta = c[1], c[2]
    if not alpha and not beta:
        raise GeometryError("the line PQ lies on the cubic")
    coords = [beta * a - alpha * b for a, b in zip(P.coords, Q.coords)]
    return ProjPoint.of(coords, F.field)


def _pencil_split(F: HyperForm, P: ProjPoint):
    """Expand F(s*P + U) with U on the hyperplane {x_j = 0}, j = pivot of P.

    Returns (j, pieces) where pieces[k] is the coefficient of s^k as a
    polynomial in the n remaining coordinates of U.
    """
    field = F.field
    n1 = F.nvars
    j = next(i for i, c in enumerate(P.coords) if c)
    n = n1 - 1
    gens = MultiPoly.gens(n + 1, field)  # s, u_0 .. u_{n-1}
    s, us = gens[0], gens[1:]
    U = []
    it = iter(us)
    for i in range(n1):
        U.append(MultiPoly.zero(n + 1, field) if i == j else next(it))
    sub = [s * P.coords[i] + U[i] for i in range(n1)]
    split = F.form.compose(sub).split_by_degree_in(0)
    zero = MultiPoly.zero(n, field)
    pieces = [split.get(k, zero) for k in range(F.degree + 1)]
    return j, pieces


def _hyperplane_embedding(j, n1, field):
    """U as a vector of polynomials in the n free coordinates (x_j = 0)."""
    n = n1 - 1
    us = MultiPoly.gens(n, field)
    it = iter(us)
    return [MultiPoly.zero(n, field) if i == j else next(it) for i in range(n1)]


@dataclass(frozen=True)
class QuadricProjection:
    """Stereographic projection of a quadric from one of its points.

    ``parametrization`` maps P^(n-1) -> Q (degree 2); ``inverse`` is the linear
    projection onto {x_j = 0}.  ``inverse o parametrization = -B * id`` where
    ``B = exceptional`` vanishes on the documented exceptional locus.
    """

    point: ProjPoint
    hyperplane_index: int
    parametrization: tuple
    inverse: tuple
    exceptional: MultiPoly


def project_quadric(Qf: HyperForm, P: ProjPoint) -> QuadricProjection:
    if Qf.degree != 2:
        raise GeometryError("project_quadric needs a quadric")
    if Qf(P):
        raise GeometryError("P is not on the quadric")
    if not any(g.evaluate(list(P.coords)) for g in gradient(Qf.form)):
        raise GeometryError("P is a singular point of the quadric")
    field = Qf.field
    n1 = Qf.nvars
    j, pieces = _pencil_split(Qf, P)
    q_of_u, bilinear = pieces[0], pieces[1]
    U = _hyperplane_embedding(j, n1, field)
    param = tuple(q_of_u * P.coords[i] - bilinear * U[i] for i in range(n1))
    xs = MultiPoly.gens(n1, field)
    inverse = tuple(xs[i] - xs[j] * P.coords[i] for i in range(n1) if i != j)
    return QuadricProjection(P, j, param, inverse, bilinear)


@dataclass(frozen=True)
class CubicProjection:
    point: ProjPoint
    hyperplane_index: int
    parametrization: tuple
    tangent_cone: MultiPoly


def project_singular_cubic(F: HyperForm, P: ProjPoint) -> CubicProjection:
    """Rational parametrization of a cubic from a double point."""
    if F.degree != 3:
        raise GeometryError("project_singular_cubic needs a cubic")
    pt = list(P.coords)
    if F(P):
        raise GeometryError("P is not on the cubic")
    if any(g.evaluate(pt) for g in gradient(F.form)):
        raise GeometryError("P is a smooth point of the cubic")
    j, pieces = _pencil_split(F, P)
    f_u, cone = pieces[0], pieces[1]
    if not cone:
        raise GeometryError("F is a cone with vertex P")
    U = _hyperplane_embedding(j, F.nvars, F.field)
    param = tuple(f_u * P.coords[i] - cone * U[i] for i in range(F.nvars))
    return CubicProjection(P, j, param, cone)


def translation_matrix(P: ProjPoint):
    """Columns e_i (i != pivot) followed by P: sends [0:...:0:1] to P."""
    n1 = len(P.coords)
    field = P.field
    j = next(i for i, c in enumerate(P.coords) if c)
    cols = []
    for i in range(n1):
        if i != j:
            cols.append([field.one if r == i else field.zero for r in range(n1)])
    cols.append(list(P.coords))
    return [[cols[c][r] for c in range(n1)] for r in range(n1)]


def branch_quartic(F: HyperForm, P: ProjPoint) -> HyperForm:
    """Branch curve f2^2 - 4 f1 f3 of the projection of a cubic surface from P."""
    if F.degree != 3 or F.nvars != 4:
        raise GeometryError("branch_quartic needs a cubic surface in P^3")
    field = F.field
    if field.characteristic == 2:
        raise GeometryError("branch_quartic is undefined in characteristic 2")
    if F(P):
        raise GeometryError("P is not on the cubic")
    M = translation_matrix(P)
    ys = MultiPoly.gens(4, field)
    sub = [sum((ys[c] * M[r][c] for c in range(4) if M[r][c]), MultiPoly.zero(4, field)) for r in range(4)]
    G = F.form.compose(sub)
    pieces = G.split_by_degree_in(3)
    zero = MultiPoly.zero(3, field)
    f1, f2, f3 = (pieces.get(3 - i, zero) for i in (1, 2, 3))
    if not f1:
        raise GeometryError("P is a singular point of the cubic")
    return HyperForm(4, f2 * f2 - f1 * f3 * 4)


def polynomial_identity_on(F: HyperForm, param) -> bool:
    """True iff F composed with the parametrization is the zero polynomial."""
    return not F.form.compose(list(param))
