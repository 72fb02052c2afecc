from collections import defaultdict

import pytest
from hypothesis import given
from hypothesis import strategies as st
from sympy.utilities.iterables import partitions

from ratlab.certificate import GuardExceeded, Verdict
from ratlab.descent import (
    BlowupStep,
    MultiplicityVector,
    big_base_point_lemma,
    blowup_update,
    bounded_multiplicity_contradiction,
    descent_certificate,
    descent_trace,
    enumerate_mult_vectors,
    manin_constraints,
    plane_map_constraints,
    replay_blowups,
    tau_degree_step,
    trace_verdict,
)


def test_multiplicity_vector_normalizes():
    v = MultiplicityVector(3, (1, 0, 5))
    assert v.mults == (5, 1)
    with pytest.raises(ValueError):
        MultiplicityVector(3, (-1,))


def test_blowup_formulas():
    assert blowup_update(1, -3, 1) == (0, -2)
    assert blowup_update(7, 4, 0) == (7, 4)
    assert BlowupStep(4).deltas == (-16, 4, -1)


@pytest.mark.parametrize("d", range(1, 13))
def test_replay_lands_on_plane_numerics(d):
    for v in enumerate_mult_vectors(*plane_map_constraints(d)):
        assert replay_blowups(d, v) == (1, -3)
    for v in enumerate_mult_vectors(*manin_constraints(d)):
        assert replay_blowups(d, v) == (3, -3)


def test_constraint_values():
    assert [plane_map_constraints(d) for d in (1, 2, 3)] == [(0, 2), (3, 11), (6, 26)]
    assert [manin_constraints(d) for d in (1, 2, 3)] == [(0, 0), (3, 9), (6, 24)]
    with pytest.raises(ValueError):
        plane_map_constraints(0)


def test_enumeration_examples():
    assert enumerate_mult_vectors(0, 2) == []
    assert enumerate_mult_vectors(3, 11) == []
    assert enumerate_mult_vectors(6, 26) == [(5, 1)]
    assert enumerate_mult_vectors(0, 0) == [()]


def _oracle_table(limit):
    """Bin every partition of every S1 <= limit by its sum of squares."""
    table = defaultdict(list)
    table[(0, 0)].append(())
    for s1 in range(1, limit + 1):
        for p in partitions(s1):
            parts = tuple(sorted((k for k, c in p.items() for _ in range(c)), reverse=True))
            s2 = sum(m * m for m in parts)
            if s2 <= limit:
                table[(s1, s2)].append(parts)
    return table


def test_enumerator_matches_partition_oracle():
    table = _oracle_table(40)
    for s1 in range(41):
        for s2 in range(41):
            assert enumerate_mult_vectors(s1, s2) == sorted(table.get((s1, s2), [])), (s1, s2)


@given(st.integers(0, 25), st.integers(0, 200))
def test_enumerated_vectors_satisfy_targets(s1, s2):
    for v in enumerate_mult_vectors(s1, s2):
        assert sum(v) == s1 and sum(m * m for m in v) == s2
        assert list(v) == sorted(v, reverse=True) and all(m > 0 for m in v)


def test_bounded_inequality_for_many_degrees():
    for d in range(1, 1001):
        lhs, mid, _ = bounded_multiplicity_contradiction(d)
        assert mid == 3 * d * d - 3 * d < lhs == 3 * d * d - 1


def test_big_base_point():
    proof = big_base_point_lemma(3, (5, 1))
    assert proof.big == (5,)
    with pytest.raises(ValueError):
        big_base_point_lemma(3, (4, 2))


@pytest.mark.parametrize("d", range(2, 13))
def test_every_plane_map_vector_has_a_big_point(d):
    for v in enumerate_mult_vectors(*plane_map_constraints(d)):
        assert max(v) > d


def test_tau_step():
    assert tau_degree_step(3, 5) == 1
    assert tau_degree_step(7, 8) == 6
    assert tau_degree_step(2, 3) == 1
    with pytest.raises(ValueError):
        tau_degree_step(3, 3)


def test_segre_trace_from_three():
    trace = descent_trace(3, "segre")
    assert trace.vectors == [(5, 1)]
    ((v, m, nd, sub),) = trace.branches
    assert (v, m, nd) == ((5, 1), 5, 1)
    assert sub.d == 1 and sub.terminal == "infeasible"
    assert trace_verdict(trace, "segre") is Verdict.NO_BIRATIONAL_MAP


@pytest.mark.parametrize("d", range(1, 13))
def test_segre_traces_all_end_infeasible(d):
    trace = descent_trace(d, "segre")
    assert trace.decreasing()
    assert all(leaf.terminal in ("infeasible", "nonpositive_degree") for leaf in trace.leaves())
    assert trace_verdict(trace, "segre") is Verdict.NO_BIRATIONAL_MAP


def test_manin_trace_from_two():
    trace = descent_trace(2, "manin")
    assert trace.vectors == [(3,)]
    ((_, m, nd, sub),) = trace.branches
    assert (m, nd) == (3, 1)
    assert sub.terminal == "all_zero" and sub.vectors == [()]
    assert trace_verdict(trace, "manin") is Verdict.PROJECTIVE_EQUIVALENCE


def test_manin_has_no_solution_at_three():
    trace = descent_trace(3, "manin")
    assert trace.terminal == "infeasible"
    assert trace_verdict(trace, "manin") is Verdict.NO_BIRATIONAL_MAP


def test_guard():
    with pytest.raises(GuardExceeded):
        descent_trace(13)
    with pytest.raises(ValueError):
        descent_trace(2, "other")


def test_certificate_replays():
    cert = descent_certificate(3, "segre")
    assert cert.verdict is Verdict.NO_BIRATIONAL_MAP
    assert cert.evidence["decreasing"]
    assert all(r["final"] == r["target"] for r in cert.evidence["blowup_replays"])
