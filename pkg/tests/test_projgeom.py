import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ratlab.exactnum import GF, QQ, MultiPoly, gradient, parse_poly
from ratlab.projgeom import (
    GeometryError,
    HyperForm,
    ProjLine3,
    ProjPoint,
    branch_quartic,
    line_from_points,
    line_on_surface,
    lines_meet,
    polynomial_identity_on,
    project_quadric,
    project_singular_cubic,
    restrict_to_line,
    third_point,
)


def pt(*c, field=QQ):
    return ProjPoint.of(list(c), field)


def form(text, n, field=QQ):
    return HyperForm.of(parse_poly(text, n, field))


FERMAT = form("x0^3 + x1^3 + x2^3 + x3^3", 4)


def test_points_are_normalized():
    assert pt(0, 2, 4) == pt(0, 1, 2)
    assert pt(0, 2, 4).coords == (0, 1, 2)
    with pytest.raises(GeometryError):
        pt(0, 0, 0)


def test_line_through_coordinate_points():
    L = line_from_points(pt(1, 0, 0, 0), pt(0, 1, 0, 0))
    assert L.rows == ((0, 0, 1, 0), (0, 0, 0, 1))


def test_line_from_points_contains_both_and_is_symmetric():
    P, Q = pt(1, 0, 0, 1), pt(0, 1, 0, 1)
    L = line_from_points(P, Q)
    assert L.contains(P) and L.contains(Q)
    assert line_from_points(Q, P) == L
    with pytest.raises(GeometryError):
        line_from_points(P, P)


def test_kernel_points_round_trip():
    rng = random.Random(3)
    K = GF(7)
    for _ in range(50):
        a, b = ([rng.randrange(7) for _ in range(4)] for _ in range(2))
        if not any(a) or not any(b):
            continue
        P, Q = ProjPoint.of(a, K), ProjPoint.of(b, K)
        if P == Q:
            continue
        L = line_from_points(P, Q)
        A, B = L.kernel_points()
        assert line_from_points(A, B) == L


def test_lines_meet_examples():
    L1 = ProjLine3.from_forms([[1, 0, 0, 0], [0, 1, 0, 0]], QQ)
    L2 = ProjLine3.from_forms([[0, 0, 1, 0], [0, 0, 0, 1]], QQ)
    L3 = ProjLine3.from_forms([[1, 0, 0, 0], [0, 0, 1, 0]], QQ)
    assert lines_meet(L1, L1)
    assert not lines_meet(L1, L2)
    assert lines_meet(L1, L3) and lines_meet(L3, L1)


def test_rank_one_forms_rejected():
    with pytest.raises(GeometryError):
        ProjLine3.from_forms([[1, 0, 0, 0], [2, 0, 0, 0]], QQ)


def test_line_on_fermat_cubic():
    L = ProjLine3.from_forms([[1, 1, 0, 0], [0, 0, 1, 1]], QQ)
    assert line_on_surface(FERMAT, L)
    M = ProjLine3.from_forms([[0, 0, 1, 0], [0, 0, 0, 1]], QQ)
    assert not line_on_surface(FERMAT, M)
    P, Q = M.kernel_points()
    assert restrict_to_line(FERMAT, P, Q) == [1, 0, 0, 1]


def test_line_containment_agrees_with_point_check_over_gf5():
    K = GF(5)
    rng = random.Random(11)
    F = FERMAT.form
    Fk = HyperForm(3, MultiPoly(4, {e: K(c) for e, c in F.terms.items()}, K))
    for _ in range(200):
        rows = [[rng.randrange(5) for _ in range(4)] for _ in range(2)]
        try:
            L = ProjLine3.from_forms(rows, K)
        except GeometryError:
            continue
        A, B = L.kernel_points()
        pts = [A] + [ProjPoint.of([a + b * c for a, b in zip(B.coords, A.coords)], K)
                     for c in (K.from_index(i) for i in range(5))]
        on_points = all(not Fk(X) for X in pts)
        assert line_on_surface(Fk, L) == on_points


def test_hyperform_rejects_inhomogeneous():
    with pytest.raises(GeometryError):
        HyperForm(3, parse_poly("x0^3 + x1", 2, QQ))


def test_third_point_on_plane_cubic():
    F = form("x1^2*x2 - x0^3 + x0*x2^2", 3)
    R = third_point(F, pt(0, 0, 1), pt(1, 0, 1))
    assert R == pt(-1, 0, 1)


def test_third_point_tangent_case_returns_the_tangency_point():
    # x1 = 0 meets y^2 z = x^3 - x z^2 at [0:0:1], [1:0:1], [-1:0:1]; use a flex instead
    F = form("x1^2*x2 - x0^3", 3)
    # the line x0 = 0 meets the cusp curve at [0:0:1] doubly and at [0:1:0] (flex) once
    R = third_point(F, pt(0, 0, 1), pt(0, 1, 0))
    assert R in (pt(0, 0, 1), pt(0, 1, 0))
    assert not F(R)


def test_third_point_errors():
    with pytest.raises(GeometryError):
        third_point(FERMAT, pt(1, -1, 0, 0), pt(0, 0, 1, -1))  # the line lies on F
    with pytest.raises(GeometryError):
        third_point(FERMAT, pt(1, 0, 0, 0), pt(1, -1, 0, 0))


def _random_cubic_and_points(seed, q=7):
    rng = random.Random(seed)
    K = GF(q)
    monos = [(a, b, c, 3 - a - b - c) for a in range(4) for b in range(4 - a) for c in range(4 - a - b)]
    F = HyperForm(3, MultiPoly(4, {m: K(rng.randrange(q)) for m in monos}, K))
    pts = []
    for i in range(q ** 4):
        c = [(i // q ** k) % q for k in range(4)]
        if not any(c):
            continue
        P = ProjPoint.of(c, K)
        if P.coords == tuple(K(x) for x in c) and not F(P):
            pts.append(P)
    return F, pts, rng


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_third_point_lies_on_surface_and_is_an_involution(seed):
    F, pts, rng = _random_cubic_and_points(seed)
    if not F.form or len(pts) < 2:
        return
    P, Q = rng.sample(pts, 2)
    try:
        R = third_point(F, P, Q)
    except GeometryError:
        assert line_on_surface(F, line_from_points(P, Q))
        return
    assert not F(R)
    assert third_point(F, Q, P) == R
    if R != P:
        assert third_point(F, P, R) == Q or R == Q


# -- projections --

def test_stereographic_projection_of_the_circle():
    C = form("x0^2 + x1^2 - x2^2", 3)
    proj = project_quadric(C, pt(-1, 0, 1))
    assert proj.hyperplane_index == 0
    assert polynomial_identity_on(C, proj.parametrization)

    def image(u1, u2):
        return ProjPoint.of([c.evaluate([Fraction(u1), Fraction(u2)]) for c in proj.parametrization], QQ)

    # (u1, u2) are coordinates on the line x0 = 0; the slope t = u1/u2
    assert image(1, 1) == pt(0, 1, 1)
    assert image(0, 1) == pt(1, 0, 1)
    for t in range(-5, 6):
        assert not C(image(1, t))


def test_quadric_round_trip_on_random_points():
    K = GF(11)
    Q = HyperForm.of(parse_poly("x0^2 + x1^2 + x2^2 - x3^2", 4, K))
    P = ProjPoint.of([0, 0, 1, 1], K)
    proj = project_quadric(Q, P)
    rng = random.Random(5)
    pts = sorted({ProjPoint.of([a, b, c, d], K) for a in range(11) for b in range(11)
                  for c in range(11) for d in range(11) if (a, b, c, d) != (0, 0, 0, 0)},
                 key=str)
    pts = [X for X in pts if not Q(X) and X != P]
    rng.shuffle(pts)
    done = 0
    for X in pts[:100]:
        U = [g.evaluate(list(X.coords)) for g in proj.inverse]
        Y = [c.evaluate(U) for c in proj.parametrization]
        if not any(Y):
            # X lies on the tangent cone at P, which the projection contracts
            continue
        assert ProjPoint.of(Y, K) == X
        done += 1
    assert done > 50


def test_projection_errors():
    C = form("x0^2 + x1^2 - x2^2", 3)
    with pytest.raises(GeometryError):
        project_quadric(C, pt(1, 1, 1))
    cone = form("x0^2 + x1^2", 3)
    with pytest.raises(GeometryError):
        project_quadric(cone, pt(0, 0, 1))


def test_nodal_cubic_parametrization():
    F = form("x1^2*x2 - x0^3 - x0^2*x2", 3)
    proj = project_singular_cubic(F, pt(0, 0, 1))
    assert polynomial_identity_on(F, proj.parametrization)
    X = [c.evaluate([Fraction(1), Fraction(2)]) for c in proj.parametrization]
    assert ProjPoint.of(X, QQ) == pt(3, 6, 1)  # slope 2: x = t^2 - 1, y = t(t^2 - 1)


def test_singular_projection_errors():
    F = form("x1^2*x2 - x0^3 - x0^2*x2", 3)
    with pytest.raises(GeometryError):
        project_singular_cubic(F, pt(0, 1, 0))  # smooth point
    cone = form("x0^3 + x1^3", 4)
    with pytest.raises(GeometryError):
        project_singular_cubic(cone, pt(0, 0, 1, 0))


# -- branch curve --

def test_branch_quartic_formula():
    F = form("x2*x3^2 + x0^2*x3 + x0*x1^2", 4)
    B = branch_quartic(F, pt(0, 0, 0, 1))
    assert B.form == parse_poly("x0^4 - 4*x0*x1^2*x2", 3, QQ)


def test_branch_quartic_errors():
    F = form("x0*x1*x2 + x3*x1^2 + x3*x0^2 - x3*x2^2", 4)
    with pytest.raises(GeometryError):
        branch_quartic(F, pt(0, 0, 0, 1))  # singular point
    K = GF(2)
    G = HyperForm.of(parse_poly("x2*x3^2 + x0^2*x3 + x0*x1^2", 4, K))
    with pytest.raises(GeometryError):
        branch_quartic(G, ProjPoint.of([0, 0, 0, 1], K))


def _all_points(K, n):
    q = K.order
    out = set()
    for i in range(q ** n):
        c = [K.from_index((i // q ** k) % q) for k in range(n)]
        if any(c):
            out.add(ProjPoint.of(c, K))
    return sorted(out, key=lambda P: tuple(x.index for x in P.coords))


def _is_smooth(F, pts):
    grad = gradient(F.form)
    return all(any(g.evaluate(list(P.coords)) for g in grad) for P in pts)


def test_branch_quartic_of_smooth_cubic_is_smooth_over_gf11():
    K = GF(11)
    rng = random.Random(2)
    P3 = _all_points(K, 4)
    P2 = _all_points(K, 3)
    monos = [(a, b, c, 3 - a - b - c) for a in range(4) for b in range(4 - a) for c in range(4 - a - b)]
    checked = 0
    while checked < 2:
        F = HyperForm(3, MultiPoly(4, {m: K(rng.randrange(11)) for m in monos}, K))
        on = [P for P in P3 if not F(P)]
        if not _is_smooth(F, on):
            continue
        P = rng.choice(on)
        B = branch_quartic(F, P)
        assert B.degree == 4
        assert _is_smooth(B, P2) or _point_on_some_line(F, P, K)
        checked += 1


def _point_on_some_line(F, P, K):
    """Whether a line of the surface over GF(11) passes through P."""
    from ratlab.cubiclines import brute_force_lines_fq

    return any(L.contains(P) for L in brute_force_lines_fq(F))
