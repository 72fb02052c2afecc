from fractions import Fraction

import pytest

from ratlab.certificate import Verdict
from ratlab.cubiclines import DiagonalCubic, incidence_matrix, lines_on_diagonal_cubic
from ratlab.exactnum import CubicRadicalField
from ratlab.galois import (
    IDENTITY,
    FieldAut,
    act_on_line,
    galois_group,
    is_nonabelian,
    orbits,
    picard_one_certificate,
    segre_cube_criterion,
)
from ratlab.projgeom import ProjLine3


@pytest.fixture(scope="module")
def two():
    L = lines_on_diagonal_cubic(DiagonalCubic((-2, 1, 1, 1)))
    return L, galois_group(2)


def test_group_orders():
    G = galois_group(2)
    assert len(G) == 6 and is_nonabelian(G)
    assert len(galois_group(8)) == 2
    assert len(galois_group(Fraction(-27, 64))) == 2
    with pytest.raises(ValueError):
        galois_group(0)


def test_composition_rule():
    r = FieldAut(1, 1)
    assert r.compose(r) == FieldAut(1, 2)
    assert r.compose(r).compose(r) == IDENTITY
    c = FieldAut(2, 0)
    assert c.compose(r) == FieldAut(2, 2)
    with pytest.raises(ValueError):
        FieldAut(0, 0)


def test_action_matches_field_conjugation():
    K = CubicRadicalField(2)
    for s in galois_group(2):
        for t in galois_group(2):
            x = K(3) + K.beta * K.omega - K.beta ** 2
            assert s.compose(t)(x) == s(t(x))


def test_rotation_moves_beta_root(two):
    K = CubicRadicalField(2)
    b, w = K.beta, K.omega
    L = ProjLine3.from_forms([[0, 1, 1, 0], [b, 0, 0, 1]], K)
    img = act_on_line(FieldAut(1, 1), L)
    assert img == ProjLine3.from_forms([[0, 1, 1, 0], [b * w, 0, 0, 1]], K)
    assert act_on_line(IDENTITY, L) == L


def test_every_automorphism_permutes_the_lines(two):
    L, G = two
    for g in G:
        assert {act_on_line(g, x) for x in L.lines} == set(L.lines)


def test_action_preserves_incidence(two):
    L, G = two
    m = incidence_matrix(L)
    part = orbits(L, G, m)
    for row in part.action:
        assert all(m[row[i]][row[j]] == m[i][j] for i in range(27) for j in range(27))


def test_orbits_for_radicand_two(two):
    L, G = two
    part = orbits(L, G)
    assert part.sizes() == [3, 3, 3, 6, 6, 6]
    assert sum(part.sizes()) == 27
    assert sorted(i for o in part.orbits for i in o.indices) == list(range(27))
    assert not any(o.pairwise_disjoint for o in part.orbits)
    for o in part.orbits:
        assert o.self_intersection == -o.size + 2 * o.meeting_pairs
        assert (o.self_intersection + o.size) % 2 == 0


def test_orbits_are_stable(two):
    L, G = two
    part = orbits(L, G)
    for row in part.action:
        for o in part.orbits:
            assert {row[i] for i in o.indices} == set(o.indices)


def test_cube_radicand_has_a_rational_line():
    L = lines_on_diagonal_cubic(DiagonalCubic((-8, 1, 1, 1)))
    part = orbits(L, galois_group(L.field.radicand))
    singles = [o for o in part.orbits if o.size == 1]
    assert singles and all(o.self_intersection == -1 for o in singles)


def test_fermat_conjugation_fixes_some_lines():
    L = lines_on_diagonal_cubic(DiagonalCubic((1, 1, 1, 1)))
    part = orbits(L, galois_group(1))
    fixed = [o.indices[0] for o in part.orbits if o.size == 1]
    assert fixed
    assert any(L.labels[i] == "01|23" for i in fixed)


def test_disjoint_orbits_have_self_intersection_minus_size():
    L = lines_on_diagonal_cubic(DiagonalCubic((-8, 1, 1, 1)))
    for o in orbits(L, galois_group(L.field.radicand)).orbits:
        if o.pairwise_disjoint:
            assert o.self_intersection == -o.size


def test_certificates_for_two_and_eight():
    cert = picard_one_certificate(DiagonalCubic((-2, 1, 1, 1)))
    assert cert.verdict is Verdict.NOT_RATIONAL
    assert cert.evidence["orbit_sizes"] == [3, 3, 3, 6, 6, 6]
    cert = picard_one_certificate(DiagonalCubic((-8, 1, 1, 1)))
    assert cert.verdict is Verdict.INCONCLUSIVE
    assert 1 in cert.evidence["orbit_sizes"]


def test_segre_examples():
    assert segre_cube_criterion((1, 1, 1, 2)) == (True, None)
    ok, w = segre_cube_criterion((1, 1, 1, 8))
    assert not ok and w == {"permutation": [0, 1, 2, 3], "ratio": "1/8"}
    ok, w = segre_cube_criterion((1, 2, 4, 1))
    assert not ok
    with pytest.raises(ValueError):
        segre_cube_criterion((1, 0, 1, 1))


def test_segre_witness_for_1_2_4_1():
    ok, w = segre_cube_criterion((1, 2, 4, 1))
    s = w["permutation"]
    a = (1, 2, 4, 1)
    assert Fraction(a[s[0]] * a[s[1]], a[s[2]] * a[s[3]]) == Fraction(w["ratio"])


SURFACES = [(-a, 1, 1, 1) for a in (2, 3, 4, 5, 6, 7, 9, 10, 12, 8, 27, 64, Fraction(1, 8))] + [
    (1, 1, 1, 1), (1, 2, 4, 1), (2, 2, 1, 1), (1, 2, 2, 4), (3, 3, 1, 1), (1, 1, 4, 2), (5, 1, 1, 1),
]


@pytest.mark.parametrize("coeffs", SURFACES, ids=lambda c: ",".join(map(str, c)))
def test_orbit_certificate_agrees_with_segre(coeffs):
    cert = picard_one_certificate(DiagonalCubic(coeffs))
    ok, _ = segre_cube_criterion(coeffs)
    assert (cert.verdict is Verdict.NOT_RATIONAL) == ok


def test_twenty_surfaces_mix_cube_and_noncube_cases():
    assert len(SURFACES) == 20
    verdicts = {segre_cube_criterion(c)[0] for c in SURFACES}
    assert verdicts == {True, False}
