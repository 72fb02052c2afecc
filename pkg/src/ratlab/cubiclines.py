"""The 27 lines on diagonal cubic surfaces a0 x0^3 + a1 x1^3 + a2 x2^3 + a3 x3^3.

Each grouping of the four terms into two binary cubics ``l1 l2 l3 + m1 m2 m3``
gives nine lines ``{li = mj = 0}``; the three groupings give all 27.  The
exact computation runs over QQ(w, b) for one radicand b^3 = r chosen from the
coefficient ratios.  ``brute_force_lines_fq`` is an independent exhaustive
oracle over small finite fields.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .exactnum import (
    QQ,
    CubicRadicalField,
    MultiPoly,
    field_of_order,
    is_cube_rational,
)
from .projgeom import GeometryError, HyperForm, ProjLine3, line_on_surface, lines_meet

GROUPINGS = ((0, 1, 2, 3), (0, 2, 1, 3), (0, 3, 1, 2))
GROUPING_LABELS = ("01|23", "02|13", "03|12")
MAX_ORACLE_Q = 32


class UnsupportedSurface(ValueError):
    pass


@dataclass(frozen=True)
class DiagonalCubic:
    coeffs: tuple

    def __post_init__(self):
        if len(self.coeffs) != 4:
            raise ValueError("a diagonal cubic has four coefficients")
        object.__setattr__(self, "coeffs", tuple(Fraction(a) for a in self.coeffs))
        if any(a == 0 for a in self.coeffs):
            raise ValueError("diagonal cubic coefficients must be nonzero")

    @classmethod
    def parse(cls, text: str) -> "DiagonalCubic":
        """Parse ``diag:a0,a1,a2,a3`` (rationals as p/q)."""
        if not text.startswith("diag:"):
            raise ValueError(f"surface must look like diag:a0,a1,a2,a3, got {text!r}")
        parts = text[5:].split(",")
        if len(parts) != 4:
            raise ValueError("diag: expects exactly four coefficients")
        try:
            return cls(tuple(Fraction(p.strip()) for p in parts))
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"bad coefficient in {text!r}: {exc}") from exc

    def spec(self) -> str:
        return "diag:" + ",".join(str(a) for a in self.coeffs)

    def form(self, field=QQ) -> HyperForm:
        terms = {}
        for i, a in enumerate(self.coeffs):
            exps = [0] * 4
            exps[i] = 3
            terms[tuple(exps)] = field(a)
        return HyperForm(3, MultiPoly(4, terms, field))


@dataclass(frozen=True)
class LineSet27:
    lines: tuple
    labels: tuple
    field: object

    def __len__(self):
        return len(self.lines)

    def index(self, L: ProjLine3) -> int:
        return self.lines.index(L)

    def to_json(self):
        return [
            {"grouping": lab, "forms": L.to_strings()}
            for L, lab in zip(self.lines, self.labels)
        ]


def _cube_class_member(x: Fraction, r: Fraction):
    """Write x = s^3 * r^j (j in 0..2); returns (s, j) or None."""
    for j in range(3):
        ok, s = is_cube_rational(x / r ** j)
        if ok:
            return s, j
    return None


def choose_radicand(coeffs) -> Fraction:
    """Single cube radicand generating all ratios a_i/a_j modulo cubes.

    Picks the first non-cube ratio in pair order, made positive and >= 1;
    returns 1 when every ratio is a cube.
    """
    ratios = [coeffs[j] / coeffs[i] for i in range(4) for j in range(i + 1, 4)]
    r = Fraction(1)
    for x in ratios:
        if not is_cube_rational(x)[0]:
            r = abs(x)
            if r < 1:
                r = 1 / r
            break
    for x in ratios:
        if _cube_class_member(x, r) is None:
            raise UnsupportedSurface(
                f"coefficients {tuple(map(str, coeffs))} need more than one cube radicand"
            )
    return r


def cube_root_in(x, K: CubicRadicalField):
    """An element g of K with g^3 = x, of the form s * b^j."""
    hit = _cube_class_member(Fraction(x), K.radicand)
    if hit is None:
        raise UnsupportedSurface(f"cube root of {x} not expressible in {K.describe()}")
    s, j = hit
    return K(s) * K.beta ** j


def factor_binary_cubic(c, d, K: CubicRadicalField):
    """Factor c X^3 + d Y^3 = c * prod (X + w^e g Y) with g^3 = d/c.

    Returns the three roots ``w^e g`` for e = 0, 1, 2: each stands for the
    linear form X + root * Y.
    """
    c, d = Fraction(c), Fraction(d)
    if c == 0 or d == 0:
        raise ValueError("binary cubic coefficients must be nonzero")
    g = cube_root_in(d / c, K)
    w = K.omega
    return (g, w * g, w * w * g)


def lines_on_diagonal_cubic(S: DiagonalCubic) -> LineSet27:
    r = choose_radicand(S.coeffs)
    K = CubicRadicalField(r)
    a = S.coeffs
    lines, labels = [], []
    for (i, j, k, l), lab in zip(GROUPINGS, GROUPING_LABELS):
        first = factor_binary_cubic(a[i], a[j], K)
        second = factor_binary_cubic(a[k], a[l], K)
        for g1 in first:
            for g2 in second:
                f1 = [K.zero] * 4
                f1[i], f1[j] = K.one, g1
                f2 = [K.zero] * 4
                f2[k], f2[l] = K.one, g2
                lines.append(ProjLine3.from_forms([f1, f2], K))
                labels.append(lab)
    if len(set(lines)) != 27:
        raise AssertionError("the 27 lines are not pairwise distinct")
    return LineSet27(tuple(lines), tuple(labels), K)


def verify_lines(S: DiagonalCubic, L: LineSet27) -> bool:
    F = S.form(L.field)
    return len(set(L.lines)) == 27 and all(line_on_surface(F, x) for x in L.lines)


def incidence_matrix(L) -> list[list[bool]]:
    lines = L.lines if isinstance(L, LineSet27) else list(L)
    n = len(lines)
    m = [[False] * n for _ in range(n)]
    for i in range(n):
        m[i][i] = True
        for j in range(i + 1, n):
            m[i][j] = m[j][i] = lines_meet(lines[i], lines[j])
    return m


def row_sums(m) -> list[int]:
    return [sum(row) - 1 for row in m]


# -- reduction to finite fields --

def _cube_roots(x, Fq):
    return [y for y in Fq.elements() if y ** 3 == x]


def reduction_data(K: CubicRadicalField, q: int):
    """Images of w and b in GF(q): smallest-index primitive cube root of 1
    and smallest-index cube root of the radicand."""
    Fq = field_of_order(q)
    omegas = [y for y in _cube_roots(Fq.one, Fq) if y != 1]
    if not omegas:
        raise ValueError(f"GF({q}) has no primitive cube root of unity")
    try:
        r = Fq(K.radicand)
    except ZeroDivisionError as exc:
        raise ValueError(f"radicand does not reduce mod {q}") from exc
    betas = _cube_roots(r, Fq)
    if not r or not betas:
        raise ValueError(f"the radicand {K.radicand} is not a nonzero cube in GF({q})")
    w = min(omegas, key=lambda y: y.index)
    b = min(betas, key=lambda y: y.index)
    return Fq, w, b


def reduce_element(x, Fq, w, b):
    total = Fq.zero
    for j, (u, v) in enumerate(x.coords):
        if u or v:
            total = total + (Fq(u) + Fq(v) * w) * b ** j
    return total


def reduce_lines(L: LineSet27, q: int) -> list[ProjLine3]:
    Fq, w, b = reduction_data(L.field, q)
    out = []
    for line in L.lines:
        rows = [[reduce_element(x, Fq, w, b) for x in row] for row in line.rows]
        out.append(ProjLine3.from_forms(rows, Fq))
    return sorted(out, key=line_sort_key)


def line_sort_key(L: ProjLine3):
    return tuple(c.index for row in L.rows for c in row)


# -- exhaustive oracle over GF(q) --

class _Tables:
    """Integer-indexed add/mul tables for a small finite field."""

    def __init__(self, Fq):
        self.field = Fq
        self.elems = [Fq.from_index(i) for i in range(Fq.order)]
        q = Fq.order
        self.add = [[(self.elems[i] + self.elems[j]).index for j in range(q)] for i in range(q)]
        self.mul = [[(self.elems[i] * self.elems[j]).index for j in range(q)] for i in range(q)]
        self.neg = [(-e).index for e in self.elems]


def _rref_lines(q):
    """All 2x4 RREF matrices over {0..q-1} as index tuples, pivot pair first."""
    for i, j in ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)):
        free1 = [c for c in range(i + 1, 4) if c != j]
        free2 = list(range(j + 1, 4))
        for v1 in product(range(q), repeat=len(free1)):
            for v2 in product(range(q), repeat=len(free2)):
                r1 = [0] * 4
                r1[i] = 1
                for c, v in zip(free1, v1):
                    r1[c] = v
                r2 = [0] * 4
                r2[j] = 1
                for c, v in zip(free2, v2):
                    r2[c] = v
                yield (i, j), r1, r2


def brute_force_lines_fq(F: HyperForm, q: int | None = None) -> list[ProjLine3]:
    """Every line of P^3(GF(q)) contained in {F = 0}, by exhaustion."""
    Fq = F.field
    if Fq.order is None:
        raise ValueError("the oracle needs a finite field")
    if q is not None and q != Fq.order:
        raise ValueError("q does not match the field of F")
    q = Fq.order
    if q > MAX_ORACLE_Q:
        raise ValueError(f"q = {q} exceeds the oracle bound {MAX_ORACLE_Q}")
    if F.nvars != 4:
        raise GeometryError("the line oracle needs a surface in P^3")
    T = _Tables(Fq)
    add, mul, neg = T.add, T.mul, T.neg
    terms = [(c.index, exps) for exps, c in F.form.terms.items()]
    d = F.degree
    one = Fq.one.index

    def ev(x):
        total = 0
        for c, exps in terms:
            v = c
            for xi, e in zip(x, exps):
                for _ in range(e):
                    v = mul[v][xi]
            total = add[total][v]
        return total

    # enough points of P^1 to pin down a binary form of degree d
    samples = [(one, 0), (0, one)] + [(one, c) for c in range(1, q)]
    exact_check = len(samples) < d + 1
    samples = samples[: d + 1]
    found = []
    for (i, j), r1, r2 in _rref_lines(q):
        free = [c for c in range(4) if c not in (i, j)]
        basis = []
        for f in free:
            v = [0] * 4
            v[f] = one
            v[i] = neg[r1[f]]
            v[j] = neg[r2[f]]
            basis.append(v)
        P, Q = basis
        ok = True
        for s, t in samples:
            x = [add[mul[s][a]][mul[t][b]] for a, b in zip(P, Q)]
            if ev(x):
                ok = False
                break
        if not ok:
            continue
        L = ProjLine3(
            (tuple(T.elems[v] for v in r1), tuple(T.elems[v] for v in r2)), Fq
        )
        if exact_check and not line_on_surface(F, L):
            continue
        found.append(L)
    return sorted(found, key=line_sort_key)


def count_rref_lines(q: int) -> int:
    return (q * q + 1) * (q * q + q + 1)
