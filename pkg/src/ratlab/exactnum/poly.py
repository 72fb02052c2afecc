"""Sparse multivariate polynomials over any of the exact fields.

A polynomial is a map from exponent tuples to nonzero coefficients, tagged
with the variable count and the coefficient field descriptor.  Instances are
treated as immutable.
"""

from __future__ import annotations

import re
from fractions import Fraction


class MultiPoly:
    __slots__ = ("nvars", "terms", "field")

    def __init__(self, nvars: int, terms, field):
        self.nvars = nvars
        self.field = field
        clean = {}
        for exps, c in dict(terms).items():
            exps = tuple(exps)
            if len(exps) != nvars or any(e < 0 for e in exps):
                raise ValueError(f"bad exponent vector {exps} for {nvars} variables")
            if c:
                clean[exps] = c
        self.terms = clean

    # -- constructors --

    @classmethod
    def zero(cls, nvars, field):
        return cls(nvars, {}, field)

    @classmethod
    def constant(cls, c, nvars, field):
        return cls(nvars, {(0,) * nvars: field(c)}, field)

    @classmethod
    def variable(cls, i, nvars, field):
        if not 0 <= i < nvars:
            raise IndexError(f"variable index {i} out of range")
        exps = [0] * nvars
        exps[i] = 1
        return cls(nvars, {tuple(exps): field.one}, field)

    @classmethod
    def gens(cls, nvars, field):
        return [cls.variable(i, nvars, field) for i in range(nvars)]

    @classmethod
    def linear_form(cls, coeffs, field):
        n = len(coeffs)
        terms = {}
        for i, c in enumerate(coeffs):
            exps = [0] * n
            exps[i] = 1
            terms[tuple(exps)] = field(c)
        return cls(n, terms, field)

    def _lift(self, other):
        if isinstance(other, MultiPoly):
            if other.nvars != self.nvars:
                raise ValueError("variable counts differ")
            return other
        return MultiPoly.constant(other, self.nvars, self.field)

    # -- arithmetic --

    def __add__(self, other):
        other = self._lift(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms[e] + c if e in terms else c
        return MultiPoly(self.nvars, terms, self.field)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.nvars, {e: -c for e, c in self.terms.items()}, self.field)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            c = self.field(other)
            return MultiPoly(self.nvars, {e: v * c for e, v in self.terms.items()}, self.field)
        other = self._lift(other)
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = c1 * c2
                terms[e] = terms[e] + v if e in terms else v
        return MultiPoly(self.nvars, terms, self.field)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers of polynomials are not defined")
        result = MultiPoly.constant(1, self.nvars, self.field)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, Fraction)) or hasattr(other, "field"):
            return self == self._lift(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    # -- structure --

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self, d: int | None = None) -> bool:
        degs = {sum(e) for e in self.terms}
        if not degs:
            return True
        return len(degs) == 1 and (d is None or degs == {d})

    def coefficient(self, exps):
        return self.terms.get(tuple(exps), self.field.zero)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: kv[0], reverse=True)

    def evaluate(self, point):
        if len(point) != self.nvars:
            raise ValueError("point has the wrong number of coordinates")
        total = self.field.zero
        cache = {}
        for exps, c in self.terms.items():
            v = c
            for i, e in enumerate(exps):
                if e:
                    key = (i, e)
                    if key not in cache:
                        cache[key] = point[i] ** e
                    v = v * cache[key]
            total = total + v
        return total

    __call__ = evaluate

    def compose(self, polys):
        """Substitute ``polys[i]`` for variable i."""
        if len(polys) != self.nvars:
            raise ValueError("need one polynomial per variable")
        target = polys[0] if polys else None
        nv = target.nvars
        result = MultiPoly.zero(nv, self.field)
        cache = {}
        for exps, c in self.terms.items():
            term = MultiPoly.constant(c, nv, self.field)
            for i, e in enumerate(exps):
                if e:
                    if (i, e) not in cache:
                        cache[(i, e)] = polys[i] ** e
                    term = term * cache[(i, e)]
            result = result + term
        return result

    def partial(self, i: int) -> "MultiPoly":
        return partial_derivative(self, i)

    def split_by_degree_in(self, i: int) -> dict[int, "MultiPoly"]:
        """Group terms by the exponent of variable i, dropping that variable."""
        out: dict[int, dict] = {}
        for exps, c in self.terms.items():
            rest = exps[:i] + exps[i + 1:]
            out.setdefault(exps[i], {})[rest] = c
        return {k: MultiPoly(self.nvars - 1, t, self.field) for k, t in sorted(out.items())}

    def to_str(self, names=None) -> str:
        if names is None:
            names = [f"x{i}" for i in range(self.nvars)]
        if not self.terms:
            return "0"
        parts = []
        for exps, c in self.sorted_terms():
            mono = "*".join(
                names[i] if e == 1 else f"{names[i]}^{e}" for i, e in enumerate(exps) if e
            )
            cs = str(c)
            if not mono:
                parts.append(f"({cs})" if " " in cs or "+" in cs[1:] else cs)
            elif c == 1:
                parts.append(mono)
            else:
                parts.append(f"({cs})*{mono}" if " " in cs or "+" in cs[1:] else f"{cs}*{mono}")
        return " + ".join(parts)

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"MultiPoly({self.to_str()})"


def partial_derivative(f: MultiPoly, i: int) -> MultiPoly:
    """Formal derivative in variable i; the exponent multiplies in the field."""
    if not 0 <= i < f.nvars:
        raise IndexError(f"variable index {i} out of range for {f.nvars} variables")
    terms = {}
    for exps, c in f.terms.items():
        e = exps[i]
        if e:
            v = c * e
            if v:
                new = list(exps)
                new[i] = e - 1
                terms[tuple(new)] = v
    return MultiPoly(f.nvars, terms, f.field)


def gradient(f: MultiPoly) -> list[MultiPoly]:
    return [partial_derivative(f, i) for i in range(f.nvars)]


def hessian(f: MultiPoly) -> list[list[MultiPoly]]:
    grad = gradient(f)
    return [[partial_derivative(g, j) for j in range(f.nvars)] for g in grad]


def parse_poly(text: str, nvars: int, field, names=None) -> MultiPoly:
    """Parse sums of monomials such as ``"x0^3 - 2*x1*x2 + 3/4"``.

    Variables default to ``x0 .. x{n-1}``; coefficients are rationals that
    get coerced into ``field``.  No parentheses.
    """
    if names is None:
        names = [f"x{i}" for i in range(nvars)]
    index = {n: i for i, n in enumerate(names)}
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty polynomial")
    pieces = re.findall(r"[+-]?[^+-]+", s)
    result = MultiPoly.zero(nvars, field)
    for piece in pieces:
        sign = -1 if piece.startswith("-") else 1
        piece = piece.lstrip("+-")
        coeff = Fraction(sign)
        exps = [0] * nvars
        for factor in piece.split("*"):
            if not factor:
                raise ValueError(f"malformed term in {text!r}")
            if re.fullmatch(r"\d+(/\d+)?", factor):
                coeff *= Fraction(factor)
                continue
            m = re.fullmatch(r"([A-Za-z_]\w*?)(?:\^(\d+))?", factor)
            if not m or m.group(1) not in index:
                raise ValueError(f"unknown factor {factor!r} in {text!r}")
            exps[index[m.group(1)]] += int(m.group(2) or 1)
        result = result + MultiPoly(nvars, {tuple(exps): field(coeff)}, field)
    return result
