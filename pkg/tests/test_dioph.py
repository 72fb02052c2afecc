import time
from math import gcd, isqrt

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ratlab.certificate import GuardExceeded, Verdict
from ratlab.dioph import (
    Component,
    ObstructionProof,
    SwdPoint,
    check_slice_certificate,
    point_on_slice,
    sum_two_squares_test,
    swd_check,
    swd_component,
    swd_no_point_certificate,
    swd_scan,
    two_squares,
)


def test_point_checks():
    assert swd_check(SwdPoint(1, 1, 2, 1))
    assert not swd_check(SwdPoint(0, 0, 0, 1))
    assert not swd_check(SwdPoint(1, 0, 1, 0))


def test_point_normalization():
    P = SwdPoint(-2, -2, -4, -2)
    assert P.coords() == [1, 1, 2, 1] and P.on_surface
    assert SwdPoint(-1, 0, 1, 0).coords() == [1, 0, -1, 0]
    assert SwdPoint.parse("[1:1:2:1]") == SwdPoint(1, 1, 2, 1)
    with pytest.raises(ValueError):
        SwdPoint(0, 0, 0, 0)


def test_components():
    assert swd_component(2, 1) is Component.LARGE
    assert swd_component(1, 1) is Component.SMALL
    assert swd_component(3, 2) is Component.NEITHER
    with pytest.raises(ValueError):
        swd_component(1, 0)
    with pytest.raises(ValueError):
        swd_component(2, 4)


@given(st.integers(-500, 500), st.integers(1, 500))
def test_components_never_overlap(z, t):
    if gcd(z, t) != 1:
        return
    large, small = 4 * z >= 7 * t, z * z <= 2 * t * t
    assert not (large and small)
    assert (swd_component(z, t) is Component.NEITHER) == (not large and not small)


def test_two_squares_examples():
    ok, proof = sum_two_squares_test(14)
    assert not ok and proof.blocking_prime == 7
    assert sum_two_squares_test(25) == (True, None)
    assert sum_two_squares_test(0) == (True, None)
    with pytest.raises(ValueError):
        sum_two_squares_test(2 ** 64)


def test_obstruction_proof_is_checked():
    with pytest.raises(AssertionError):
        ObstructionProof(14, ((2, 1), (7, 1)), 2)
    with pytest.raises(AssertionError):
        ObstructionProof(15, ((2, 1), (7, 1)), 7)


@given(st.integers(0, 10 ** 4), st.integers(0, 10 ** 4))
def test_sums_of_two_squares_pass(a, b):
    M = a * a + b * b
    ok, _ = sum_two_squares_test(M)
    assert ok
    u, v = two_squares(M)
    assert u * u + v * v == M


@given(st.integers(1, 3000))
def test_decomposition_agrees_with_brute_scan(M):
    brute = any(isqrt(M - u * u) ** 2 == M - u * u for u in range(isqrt(M) + 1))
    assert sum_two_squares_test(M)[0] == brute
    assert (two_squares(M) is not None) == brute


@pytest.mark.parametrize("z,M,prime", [(0, 14, 7), (1, 3, 3), (-1, 11, 11)])
def test_small_slice_certificates(z, M, prime):
    cert = swd_no_point_certificate(z, 1)
    assert cert.verdict is Verdict.NO_POINT_ON_SLICE
    assert cert.evidence["M"] == M
    assert cert.evidence["proof"]["blocking_prime"] == prime


def test_no_point_certificate_preconditions():
    with pytest.raises(ValueError):
        swd_no_point_certificate(2, 1)


def test_large_slice_recovers_known_point():
    assert point_on_slice(2, 1) == SwdPoint(1, 1, 2, 1)
    cert = check_slice_certificate(2, 1)
    assert cert.verdict is Verdict.VERIFIED


def test_neither_slice_has_no_real_point():
    assert check_slice_certificate(3, 2).verdict is Verdict.NO_POINT_ON_SLICE


def test_scan_height_50():
    rep = swd_scan(50)
    assert rep.failures == []
    assert rep.large_points_found
    for c in rep.large_points_found:
        assert SwdPoint(*c).on_surface


def test_scan_height_200_within_budget():
    start = time.perf_counter()
    rep = swd_scan(200)
    assert time.perf_counter() - start < 60
    assert rep.failures == [] and rep.small_slices_checked > 0
    assert len(rep.obstructions) == rep.small_slices_checked


def test_scan_guard():
    with pytest.raises(GuardExceeded):
        swd_scan(10 ** 4 + 1)
