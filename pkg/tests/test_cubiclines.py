from fractions import Fraction

import pytest

from ratlab.cubiclines import (
    DiagonalCubic,
    UnsupportedSurface,
    brute_force_lines_fq,
    choose_radicand,
    count_rref_lines,
    factor_binary_cubic,
    incidence_matrix,
    lines_on_diagonal_cubic,
    reduce_lines,
    row_sums,
    verify_lines,
)
from ratlab.exactnum import GF, CubicRadicalField, field_of_order, parse_poly
from ratlab.projgeom import HyperForm, line_on_surface


@pytest.fixture(scope="module")
def fermat():
    return lines_on_diagonal_cubic(DiagonalCubic((1, 1, 1, 1)))


@pytest.fixture(scope="module")
def radical_two():
    return lines_on_diagonal_cubic(DiagonalCubic((-2, 1, 1, 1)))


def test_surface_parsing():
    S = DiagonalCubic.parse("diag:1/2, -3, 1, 1")
    assert S.coeffs == (Fraction(1, 2), -3, 1, 1)
    assert S.spec() == "diag:1/2,-3,1,1"
    for bad in ("1,1,1,1", "diag:1,1,1", "diag:1,0,1,1", "diag:a,1,1,1"):
        with pytest.raises(ValueError):
            DiagonalCubic.parse(bad)


def test_factor_x3_minus_a_x0():
    K = CubicRadicalField(2)
    roots = factor_binary_cubic(1, -2, K)
    b, w = K.beta, K.omega
    assert roots == (-b, -b * w, -b * w * w)
    for g in roots:
        assert g ** 3 == -2


def test_factor_sum_of_cubes_over_omega():
    K = CubicRadicalField(1)
    assert factor_binary_cubic(1, 1, K) == (K.one, K.omega, K.omega ** 2)


def test_factor_needs_expressible_root():
    with pytest.raises(UnsupportedSurface, match="not expressible"):
        factor_binary_cubic(1, 5, CubicRadicalField(2))


def test_radicand_choice():
    assert choose_radicand((1, 1, 1, 1)) == 1
    assert choose_radicand((-2, 1, 1, 1)) == 2
    assert choose_radicand((1, 2, 4, 1)) == 2
    with pytest.raises(UnsupportedSurface):
        choose_radicand(tuple(map(Fraction, (1, 1, 5, 7))))


def test_fermat_lines(fermat):
    assert len(set(fermat.lines)) == 27
    assert verify_lines(DiagonalCubic((1, 1, 1, 1)), fermat)
    assert fermat.field.radicand == 1
    # beta = 1, so every coefficient lives in QQ(w)
    for L in fermat.lines:
        for row in L.rows:
            for x in row:
                assert all(c == (0, 0) for c in x.coords[1:])


def test_radicand_two_lines(radical_two):
    F = DiagonalCubic((-2, 1, 1, 1)).form(radical_two.field)
    assert len(set(radical_two.lines)) == 27
    assert all(line_on_surface(F, L) for L in radical_two.lines)


def test_each_grouping_contributes_nine(fermat):
    assert sorted(fermat.labels.count(g) for g in set(fermat.labels)) == [9, 9, 9]


@pytest.mark.parametrize("which", ["fermat", "radical_two"])
def test_incidence_matrix_shape(which, request):
    L = request.getfixturevalue(which)
    m = incidence_matrix(L)
    assert all(m[i][i] for i in range(27))
    assert all(m[i][j] == m[j][i] for i in range(27) for j in range(27))
    assert set(row_sums(m)) == {10}


def test_lines_in_the_same_plane_meet(fermat):
    m = incidence_matrix(fermat)
    # lines 0, 1, 2 share the plane x0 + x1 = 0 in the first grouping
    assert m[0][1] and m[1][2] and m[0][2]
    assert fermat.lines[0].rows[0] == fermat.lines[1].rows[0]


def test_unsupported_surface():
    with pytest.raises(UnsupportedSurface):
        lines_on_diagonal_cubic(DiagonalCubic((1, 1, 5, 7)))


def test_candidate_count():
    assert count_rref_lines(7) == 2850
    assert count_rref_lines(2) == 35


def test_fermat_mod_7_oracle_matches_reduction(fermat):
    F = DiagonalCubic((1, 1, 1, 1)).form(GF(7))
    found = brute_force_lines_fq(F)
    assert len(found) == 27
    assert found == reduce_lines(fermat, 7)
    assert set(row_sums(incidence_matrix(found))) == {10}


def test_fermat_mod_5_and_over_gf25():
    few = brute_force_lines_fq(DiagonalCubic((1, 1, 1, 1)).form(GF(5)))
    assert 0 < len(few) < 27
    full = brute_force_lines_fq(DiagonalCubic((1, 1, 1, 1)).form(field_of_order(25)))
    assert len(full) == 27


def test_reduction_of_radicand_two_mod_31(radical_two):
    # 31 = 1 mod 3 and 2 = 4^3 mod 31
    F = DiagonalCubic((-2, 1, 1, 1)).form(GF(31))
    assert brute_force_lines_fq(F) == reduce_lines(radical_two, 31)


def test_reduction_refuses_bad_primes(fermat, radical_two):
    with pytest.raises(ValueError):
        reduce_lines(fermat, 5)  # no primitive cube root of unity
    with pytest.raises(ValueError):
        reduce_lines(radical_two, 7)  # 2 is not a cube mod 7


def test_oracle_on_smooth_quadric_mod_3():
    K = GF(3)
    Q = HyperForm.of(parse_poly("x0*x1 - x2*x3", 4, K))
    found = brute_force_lines_fq(Q)
    # each ruling of P^1 x P^1 over GF(3) has q + 1 = 4 lines
    assert len(found) == 8
    # direct count: lines {x0 = a x2, x3 = a x1} style, independent of the oracle
    rulings = 0
    for L in found:
        meets = sum(1 for M in found if M != L and not _disjoint(L, M))
        rulings += meets == 4
    assert rulings == 8


def _disjoint(L, M):
    from ratlab.projgeom import lines_meet

    return not lines_meet(L, M)


def test_oracle_bound():
    with pytest.raises(ValueError):
        brute_force_lines_fq(DiagonalCubic((1, 1, 1, 1)).form(GF(37)))
