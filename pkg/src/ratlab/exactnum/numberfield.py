"""Arithmetic in QQ(w, b) with w^2 + w + 1 = 0 and b^3 = a.

An element is ``c0 + c1*b + c2*b^2`` where each ``ci`` lies in QQ(w) and is
stored as a pair ``(x, y)`` meaning ``x + y*w``.  When the radicand is a
rational cube the algebra is not a field; inverting a zero divisor raises
:class:`ZeroDivisorError`.
"""

from __future__ import annotations

from fractions import Fraction

from .rational import is_cube_rational

_ZERO = Fraction(0)
_ONE = Fraction(1)


class ZeroDivisorError(ZeroDivisionError):
    pass


# QQ(w) helpers on pairs

def _w_add(u, v):
    return (u[0] + v[0], u[1] + v[1])


def _w_sub(u, v):
    return (u[0] - v[0], u[1] - v[1])


def _w_mul(u, v):
    a, b = u
    c, d = v
    if not (a or b) or not (c or d):
        return (_ZERO, _ZERO)
    bd = b * d
    return (a * c - bd, a * d + b * c - bd)


def _w_conj(u):
    # w -> w^2 = -1 - w
    return (u[0] - u[1], -u[1])


def _w_times_omega(u, k):
    a, b = u
    for _ in range(k % 3):
        a, b = -b, a - b
    return (a, b)


def render_qw(u) -> str:
    a, b = u
    return f"{a}+{b}*w" if b >= 0 else f"{a}-{-b}*w"


class NumberFieldElem:
    __slots__ = ("coords", "field")

    def __init__(self, coords, field: "CubicRadicalField"):
        self.coords = tuple((Fraction(x), Fraction(y)) for x, y in coords)
        self.field = field

    def _lift(self, other):
        if isinstance(other, NumberFieldElem):
            if other.field != self.field:
                raise TypeError("elements of different radical fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field(other)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return NumberFieldElem([_w_add(u, v) for u, v in zip(self.coords, other.coords)], self.field)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return NumberFieldElem([_w_sub(u, v) for u, v in zip(self.coords, other.coords)], self.field)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return NumberFieldElem([(-x, -y) for x, y in self.coords], self.field)

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        a = self.field.radicand
        acc = [(_ZERO, _ZERO)] * 5
        for i, u in enumerate(self.coords):
            if not (u[0] or u[1]):
                continue
            for j, v in enumerate(other.coords):
                if v[0] or v[1]:
                    acc[i + j] = _w_add(acc[i + j], _w_mul(u, v))
        out = [
            _w_add(acc[0], (acc[3][0] * a, acc[3][1] * a)),
            _w_add(acc[1], (acc[4][0] * a, acc[4][1] * a)),
            acc[2],
        ]
        return NumberFieldElem(out, self.field)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = self.field.one
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def _flat(self):
        return [c for pair in self.coords for c in pair]

    def inverse(self):
        """Adjugate over QQ(w): x * adj(x) = N(x) with N(x) in QQ(w)."""
        r = self.field.radicand
        a, b, c = self.coords

        def sc(u, k):
            return (u[0] * k, u[1] * k)

        adj = (
            _w_sub(_w_mul(a, a), sc(_w_mul(b, c), r)),
            _w_sub(sc(_w_mul(c, c), r), _w_mul(a, b)),
            _w_sub(_w_mul(b, b), _w_mul(a, c)),
        )
        norm = _w_add(_w_add(_w_mul(a, adj[0]), sc(_w_mul(b, adj[2]), r)), sc(_w_mul(c, adj[1]), r))
        u, v = norm
        q = u * u - u * v + v * v
        if not q:
            raise ZeroDivisorError(f"{self} is a zero divisor in {self.field.describe()}")
        ninv = ((u - v) / q, -v / q)
        return NumberFieldElem([_w_mul(x, ninv) for x in adj], self.field)

    def __truediv__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        if isinstance(other, NumberFieldElem) and other.is_rational():
            r = other.coords[0][0]
            if not r:
                raise ZeroDivisionError("division by zero")
            return NumberFieldElem([(x / r, y / r) for x, y in self.coords], self.field)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.field(other) * self.inverse()

    def is_rational(self) -> bool:
        return not self.coords[0][1] and not any(x or y for x, y in self.coords[1:])

    def conjugate(self, e: int, k: int) -> "NumberFieldElem":
        """Image under the automorphism w -> w^e, b -> b*w^k."""
        out = []
        for j, u in enumerate(self.coords):
            if e % 3 == 2:
                u = _w_conj(u)
            out.append(_w_times_omega(u, j * k))
        return NumberFieldElem(out, self.field)

    def __bool__(self):
        return any(x or y for x, y in self.coords)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coords[0][0] == other
        if isinstance(other, NumberFieldElem):
            return self.field == other.field and self.coords == other.coords
        return NotImplemented

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def __hash__(self):
        if self.is_rational():
            return hash(self.coords[0][0])
        return hash((self.field.radicand, self.coords))

    def __str__(self):
        parts = []
        for j, u in enumerate(self.coords):
            if not (u[0] or u[1]):
                continue
            mono = ("", "*b", "*b^2")[j]
            parts.append(f"({render_qw(u)}){mono}")
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return f"NumberFieldElem({self})"


class CubicRadicalField:
    """Descriptor for QQ(w, b), b^3 = radicand."""

    characteristic = 0
    order = None

    def __init__(self, radicand):
        a = Fraction(radicand)
        if a == 0:
            raise ValueError("radicand must be nonzero")
        self.radicand = a
        self._basis = None
        self.is_field = not is_cube_rational(a)[0]
        self.zero = NumberFieldElem([(0, 0)] * 3, self)
        self.one = NumberFieldElem([(1, 0), (0, 0), (0, 0)], self)
        self.omega = NumberFieldElem([(0, 1), (0, 0), (0, 0)], self)
        self.beta = NumberFieldElem([(0, 0), (1, 0), (0, 0)], self)

    def __call__(self, x):
        if isinstance(x, NumberFieldElem):
            if x.field != self:
                raise TypeError("element of a different radical field")
            return x
        x = Fraction(x)
        return NumberFieldElem([(x, 0), (0, 0), (0, 0)], self)

    def basis(self):
        """QQ-basis 1, w, b, w*b, b^2, w*b^2 in coordinate order."""
        if self._basis is None:
            units = []
            for i in range(6):
                flat = [0] * 6
                flat[i] = 1
                units.append(NumberFieldElem([(flat[0], flat[1]), (flat[2], flat[3]), (flat[4], flat[5])], self))
            self._basis = tuple(units)
        return self._basis

    def describe(self) -> str:
        return f"QQ(w, b | b^3 = {self.radicand})"

    def render(self, x) -> str:
        return str(self(x))

    def __repr__(self):
        return self.describe()

    def __eq__(self, other):
        return isinstance(other, CubicRadicalField) and other.radicand == self.radicand

    def __hash__(self):
        return hash(("radical", self.radicand))
