"""Degree descent for linear systems on a cubic surface.

A linear system in |dH| with base multiplicities m_i must satisfy two
integer constraints (sum of m_i and sum of m_i^2).  The third-intersection
involution at a point of multiplicity m > d moves the system into
|(2d - m)H|.  The prover here branches over every feasible multiplicity
vector and every admissible big multiplicity, so each trace is a complete
case analysis rather than one path.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import isqrt

from .certificate import Certificate, GuardExceeded, Verdict

# H^2 and K.H on a smooth cubic surface
H2 = 3
KH = -3
DEFAULT_MAX_D = 12


@dataclass(frozen=True)
class MultiplicityVector:
    d: int
    mults: tuple

    def __post_init__(self):
        if self.d < 1:
            raise ValueError("degree must be positive")
        if any(m < 0 for m in self.mults):
            raise ValueError("multiplicities are nonnegative")
        ms = tuple(sorted((m for m in self.mults if m), reverse=True))
        object.__setattr__(self, "mults", ms)


@dataclass(frozen=True)
class BlowupStep:
    m: int

    @property
    def deltas(self):
        """Changes of (C^2, C.K, E^2) when a point of multiplicity m is blown up."""
        return (-self.m * self.m, self.m, -1)


def blowup_update(c2: int, ck: int, m: int) -> tuple[int, int]:
    if m < 0:
        raise ValueError("multiplicity must be nonnegative")
    return c2 - m * m, ck + m


def replay_blowups(d: int, mults) -> tuple[int, int]:
    c2, ck = H2 * d * d, KH * d
    for m in mults:
        c2, ck = blowup_update(c2, ck, m)
    return c2, ck


def plane_map_constraints(d: int) -> tuple[int, int]:
    """(sum m_i, sum m_i^2) for a birational map to P^2 given by |dH|."""
    if d < 1:
        raise ValueError("d must be >= 1")
    return 3 * d - 3, 3 * d * d - 1


def manin_constraints(d: int) -> tuple[int, int]:
    """(sum m_i, sum m_i^2) for a birational map to another cubic surface."""
    if d < 1:
        raise ValueError("d must be >= 1")
    return 3 * d - 3, 3 * d * d - 3


def enumerate_mult_vectors(s1: int, s2: int) -> list[tuple]:
    """All descending positive tuples with sum s1 and sum of squares s2."""
    if s1 < 0 or s2 < 0:
        raise ValueError("targets must be nonnegative")
    out = []

    def rec(rem1, rem2, cap, acc):
        if rem1 == 0:
            if rem2 == 0:
                out.append(tuple(acc))
            return
        # with parts <= cap summing to rem1: rem1 <= sum m^2 <= cap * rem1
        if rem2 < rem1 or rem2 > cap * rem1:
            return
        for m in range(min(cap, rem1, isqrt(rem2)), 0, -1):
            acc.append(m)
            rec(rem1 - m, rem2 - m * m, m, acc)
            acc.pop()

    rec(s1, s2, max(s1, 1), [])
    return sorted(out)


@dataclass(frozen=True)
class BigPointProof:
    d: int
    vector: tuple
    big: tuple  # multiplicities exceeding d
    inequality: tuple | None  # (sum m^2, d * sum m, bound) when replayed

    def to_json(self):
        return {"d": self.d, "vector": list(self.vector), "big": list(self.big),
                "inequality": list(self.inequality) if self.inequality else None}


def bounded_multiplicity_contradiction(d: int) -> tuple[int, int, int]:
    """If every m_i <= d then 3d^2-1 = sum m^2 <= d sum m = 3d^2-3d < 3d^2-1."""
    s1, s2 = plane_map_constraints(d)
    lhs, mid = s2, d * s1
    if not (mid < lhs):
        raise AssertionError(f"inequality fails at d={d}")
    return lhs, mid, s2


def big_base_point_lemma(d: int, v) -> BigPointProof:
    mults = tuple(v.mults if isinstance(v, MultiplicityVector) else v)
    s1, s2 = plane_map_constraints(d)
    if sum(mults) != s1 or sum(m * m for m in mults) != s2:
        raise ValueError(f"{mults} violates the constraints {s1, s2} at d={d}")
    big = tuple(sorted({m for m in mults if m > d}, reverse=True))
    if big:
        return BigPointProof(d, mults, big, None)
    # unreachable for a genuine solution; the chain certifies that
    lhs, mid, _ = bounded_multiplicity_contradiction(d)
    raise AssertionError(f"enumeration bug: {mults} has no m > d although {lhs} > {mid}")


def tau_degree_step(d: int, m: int) -> int:
    if m <= d:
        raise ValueError("the involution step needs m > d")
    return 2 * d - m


@dataclass
class TraceNode:
    d: int
    constraints: tuple
    vectors: list
    branches: list = field(default_factory=list)
    terminal: str | None = None  # "infeasible", "all_zero", "nonpositive_degree"

    def to_json(self):
        out = {"d": self.d, "constraints": list(self.constraints),
               "vectors": [list(v) for v in self.vectors]}
        if self.terminal == "infeasible":
            out["infeasible"] = True
        elif self.terminal == "all_zero":
            out["all_zero"] = True
        elif self.terminal == "nonpositive_degree":
            out["nonpositive_degree"] = True
        out["branches"] = [
            {"vector": list(v), "m": m, "next_d": nd, "trace": sub.to_json()}
            for v, m, nd, sub in self.branches
        ]
        return out

    def leaves(self):
        if self.terminal:
            yield self
        for _, _, _, sub in self.branches:
            yield from sub.leaves()

    def decreasing(self) -> bool:
        return all(sub.d < self.d and sub.decreasing() for _, _, _, sub in self.branches)


DescentTrace = TraceNode


def descent_trace(d_start: int, variant: str = "segre", max_d: int = DEFAULT_MAX_D) -> TraceNode:
    if variant not in ("segre", "manin"):
        raise ValueError("variant must be 'segre' or 'manin'")
    if d_start < 1:
        raise ValueError("d must be >= 1")
    if d_start > max_d:
        raise GuardExceeded(f"d = {d_start} exceeds the enumeration bound {max_d}")
    constraints = plane_map_constraints if variant == "segre" else manin_constraints
    memo: dict[int, TraceNode] = {}

    def build(d):
        if d in memo:
            return memo[d]
        if d < 1:
            node = TraceNode(d, (), [], terminal="nonpositive_degree")
            memo[d] = node
            return node
        s1, s2 = constraints(d)
        vecs = enumerate_mult_vectors(s1, s2)
        node = TraceNode(d, (s1, s2), vecs)
        if not vecs:
            node.terminal = "infeasible"
        elif variant == "manin" and d == 1:
            node.terminal = "all_zero"
        else:
            for v in vecs:
                big = sorted({m for m in v if m > d}, reverse=True)
                if variant == "segre":
                    big_base_point_lemma(d, v)
                elif not big:
                    raise AssertionError(f"d={d}: {v} has no multiplicity above d")
                for m in big:
                    nd = tau_degree_step(d, m)
                    node.branches.append((v, m, nd, build(nd)))
        memo[d] = node
        return node

    return build(d_start)


def trace_verdict(trace: TraceNode, variant: str) -> Verdict:
    leaves = list(trace.leaves())
    if variant == "segre":
        if all(leaf.terminal in ("infeasible", "nonpositive_degree") for leaf in leaves):
            return Verdict.NO_BIRATIONAL_MAP
        return Verdict.REFUTED
    if any(leaf.terminal == "all_zero" for leaf in leaves):
        return Verdict.PROJECTIVE_EQUIVALENCE
    return Verdict.NO_BIRATIONAL_MAP


def descent_certificate(d: int, variant: str) -> Certificate:
    trace = descent_trace(d, variant)
    verdict = trace_verdict(trace, variant)
    target = (1, -3) if variant == "segre" else (3, -3)
    replays = []
    for node in _nodes(trace):
        for v in node.vectors:
            replays.append({"d": node.d, "vector": list(v),
                            "final": list(replay_blowups(node.d, v)), "target": list(target)})
    evidence = {
        "variant": variant,
        "d_start": d,
        "trace": trace.to_json(),
        "blowup_replays": replays,
        "decreasing": trace.decreasing(),
        "ordering_constraint_encoded": False,
    }
    claims = [
        "multiplicity vectors are all solutions of the two sum constraints",
        "every solution has a multiplicity above d; the involution lowers d to 2d - m",
        "infinitely-near ordering is not encoded (over-approximation)",
    ]
    return Certificate("descent", {"d": d, "variant": variant}, verdict, evidence, claims)


def _nodes(trace):
    seen = set()
    stack = [trace]
    out = []
    while stack:
        n = stack.pop()
        if id(n) in seen:
            continue
        seen.add(id(n))
        out.append(n)
        stack.extend(sub for _, _, _, sub in n.branches)
    return sorted(out, key=lambda n: -n.d)
