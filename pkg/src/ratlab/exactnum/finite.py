"""Prime fields GF(p) and extensions GF(p^k) = GF(p)[t]/(modulus).

Extension elements are coefficient tuples in the power basis of ``t``
(lowest degree first).  Field descriptors are cached, so two requests for
the same field return the same object and element comparison across them
is structural.
"""

from __future__ import annotations

import functools
from fractions import Fraction
from itertools import product

from .primes import factorize, require_prime


# -- univariate polynomials over GF(p), lists of ints, lowest degree first --

def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a, f, p):
    a = _trim(x % p for x in a)
    df = len(f) - 1
    inv_lead = pow(f[-1], -1, p)
    while len(a) - 1 >= df:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - df
        for i, fc in enumerate(f):
            a[shift + i] = (a[shift + i] - c * fc) % p
        a = _trim(a)
    return a


def _poly_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def _poly_powmod(a, e, f, p):
    result = [1]
    base = _poly_mod(a, f, p)
    while e:
        if e & 1:
            result = _poly_mod(_poly_mul(result, base, p), f, p)
        base = _poly_mod(_poly_mul(base, base, p), f, p)
        e >>= 1
    return result


def _poly_gcd(a, b, p):
    a, b = _trim(a), _trim(b)
    while b:
        a, b = b, _poly_mod(a, b, p)
    return a


def _poly_sub(a, b, p):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _trim((x - y) % p for x, y in zip(a, b))


def is_irreducible(modulus, p: int) -> bool:
    """Rabin's irreducibility test for a monic polynomial over GF(p)."""
    f = _trim(modulus)
    k = len(f) - 1
    if k < 1:
        return False
    if k == 1:
        return True
    t = [0, 1]
    frob = t
    powers = {0: t}
    for j in range(1, k + 1):
        frob = _poly_powmod(frob, p, f, p)
        powers[j] = frob
    if _poly_sub(powers[k], t, p):
        return False
    for r in factorize(k):
        g = _poly_gcd(f, _poly_sub(powers[k // r], t, p), p)
        if len(g) > 1:
            return False
    return True


def render_upoly(coeffs, var: str = "t") -> str:
    parts = []
    for d in range(len(coeffs) - 1, -1, -1):
        c = coeffs[d]
        if not c:
            continue
        if d == 0:
            parts.append(str(c))
            continue
        mono = var if d == 1 else f"{var}^{d}"
        parts.append(mono if c == 1 else f"{c}*{mono}")
    return "+".join(parts) if parts else "0"


# -- elements --

class _FiniteElem:
    __slots__ = ()

    def __radd__(self, other):
        return self + other

    def __rsub__(self, other):
        return (-self) + other

    def __rmul__(self, other):
        return self * other

    def __truediv__(self, other):
        other = self.field._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.field(other) * self.inverse()

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

    def inverse(self):
        if not self:
            raise ZeroDivisionError(f"zero has no inverse in {self.field.describe()}")
        return self ** (self.field.order - 2)

    def frobenius(self):
        return self ** self.field.characteristic

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def __repr__(self):
        return f"{self}@{self.field.describe()}"


class PrimeFieldElem(_FiniteElem):
    __slots__ = ("value", "field")

    def __init__(self, value: int, field: "PrimeField"):
        self.value = value % field.p
        self.field = field

    def __add__(self, other):
        other = self.field._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return PrimeFieldElem(self.value + other.value, self.field)

    def __sub__(self, other):
        other = self.field._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return PrimeFieldElem(self.value - other.value, self.field)

    def __mul__(self, other):
        other = self.field._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return PrimeFieldElem(self.value * other.value, self.field)

    def __neg__(self):
        return PrimeFieldElem(-self.value, self.field)

    def inverse(self):
        if not self.value:
            raise ZeroDivisionError(f"zero has no inverse in {self.field.describe()}")
        return PrimeFieldElem(pow(self.value, -1, self.field.p), self.field)

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return PrimeFieldElem(pow(self.value, e, self.field.p), self.field)

    def __bool__(self):
        return self.value != 0

    def __eq__(self, other):
        if isinstance(other, PrimeFieldElem):
            return self.field == other.field and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.field.p
        return NotImplemented

    def __hash__(self):
        return hash((self.field.p, self.value))

    def __str__(self):
        return str(self.value)

    @property
    def index(self) -> int:
        return self.value


class ExtFieldElem(_FiniteElem):
    __slots__ = ("coeffs", "field")

    def __init__(self, coeffs, field: "ExtField"):
        self.coeffs = tuple(coeffs)
        self.field = field

    def __add__(self, other):
        other = self.field._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        p = self.field.p
        return ExtFieldElem(((a + b) % p for a, b in zip(self.coeffs, other.coeffs)), self.field)

    def __sub__(self, other):
        other = self.field._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        p = self.field.p
        return ExtFieldElem(((a - b) % p for a, b in zip(self.coeffs, other.coeffs)), self.field)

    def __neg__(self):
        p = self.field.p
        return ExtFieldElem(((-a) % p for a in self.coeffs), self.field)

    def __mul__(self, other):
        other = self.field._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return ExtFieldElem(self.field._mul(self.coeffs, other.coeffs), self.field)

    def __bool__(self):
        return any(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, ExtFieldElem):
            return self.field == other.field and self.coeffs == other.coeffs
        if isinstance(other, int):
            return self.coeffs == self.field(other).coeffs
        return NotImplemented

    def __hash__(self):
        return hash((self.field.p, self.field.modulus, self.coeffs))

    def __str__(self):
        return render_upoly(self.coeffs)

    @property
    def index(self) -> int:
        p = self.field.p
        return sum(c * p ** i for i, c in enumerate(self.coeffs))


# -- fields --

class PrimeField:
    degree = 1

    def __init__(self, p: int):
        self.p = require_prime(p)
        self.characteristic = p
        self.order = p
        self.modulus = (0, 1)
        self.zero = PrimeFieldElem(0, self)
        self.one = PrimeFieldElem(1, self)

    def _coerce(self, x):
        if isinstance(x, PrimeFieldElem):
            if x.field != self:
                raise TypeError(f"cannot mix {x.field.describe()} with {self.describe()}")
            return x
        if isinstance(x, int):
            return PrimeFieldElem(x, self)
        if isinstance(x, Fraction):
            return self(x)
        return NotImplemented

    def __call__(self, x):
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroDivisionError(f"{x} has no reduction mod {self.p}")
            return PrimeFieldElem(x.numerator * pow(x.denominator, -1, self.p), self)
        if isinstance(x, (list, tuple)):
            (x,) = x
        y = self._coerce(x)
        if y is NotImplemented:
            raise TypeError(f"cannot coerce {x!r} into {self.describe()}")
        return y

    def from_index(self, i: int) -> PrimeFieldElem:
        return PrimeFieldElem(i, self)

    def elements(self):
        return [PrimeFieldElem(i, self) for i in range(self.p)]

    @property
    def gen(self):
        return self.zero

    def describe(self) -> str:
        return f"GF({self.p})"

    def render(self, x) -> str:
        return str(self(x))

    def __repr__(self):
        return self.describe()

    def __eq__(self, other):
        return isinstance(other, (PrimeField, ExtField)) and (self.p, self.modulus) == (other.p, other.modulus)

    def __hash__(self):
        return hash((self.p, self.modulus))


class ExtField:
    def __init__(self, p: int, modulus):
        self.p = require_prime(p)
        modulus = tuple(c % p for c in modulus)
        if len(modulus) < 3 or modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree >= 2")
        if not is_irreducible(modulus, p):
            raise ValueError(f"{render_upoly(modulus)} is reducible over GF({p})")
        self.modulus = modulus
        self.degree = len(modulus) - 1
        self.characteristic = p
        self.order = p ** self.degree
        self.zero = ExtFieldElem((0,) * self.degree, self)
        self.one = ExtFieldElem((1,) + (0,) * (self.degree - 1), self)

    def _mul(self, a, b):
        p, k, f = self.p, self.degree, self.modulus
        prod = [0] * (2 * k - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        for d in range(2 * k - 2, k - 1, -1):
            c = prod[d] % p
            if c:
                base = d - k
                for i in range(k):
                    if f[i]:
                        prod[base + i] -= c * f[i]
        return tuple(c % p for c in prod[:k])

    def _coerce(self, x):
        if isinstance(x, ExtFieldElem):
            if x.field != self:
                raise TypeError(f"cannot mix {x.field.describe()} with {self.describe()}")
            return x
        if isinstance(x, int):
            return ExtFieldElem((x % self.p,) + (0,) * (self.degree - 1), self)
        if isinstance(x, PrimeFieldElem) and x.field.p == self.p:
            return self._coerce(x.value)
        if isinstance(x, Fraction):
            return self(x)
        return NotImplemented

    def __call__(self, x):
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroDivisionError(f"{x} has no reduction mod {self.p}")
            return self._coerce(x.numerator * pow(x.denominator, -1, self.p))
        if isinstance(x, (list, tuple)):
            c = [int(v) % self.p for v in x]
            if len(c) > self.degree:
                raise ValueError("too many coefficients")
            return ExtFieldElem(tuple(c) + (0,) * (self.degree - len(c)), self)
        y = self._coerce(x)
        if y is NotImplemented:
            raise TypeError(f"cannot coerce {x!r} into {self.describe()}")
        return y

    @property
    def gen(self):
        return self((0, 1))

    def from_index(self, i: int) -> ExtFieldElem:
        digits = []
        for _ in range(self.degree):
            i, r = divmod(i, self.p)
            digits.append(r)
        return ExtFieldElem(tuple(digits), self)

    def elements(self):
        return [ExtFieldElem(c[::-1], self) for c in product(range(self.p), repeat=self.degree)]

    def describe(self) -> str:
        return f"GF({self.p}^{self.degree};{render_upoly(self.modulus)})"

    def render(self, x) -> str:
        return str(self(x))

    def __repr__(self):
        return self.describe()

    def __eq__(self, other):
        return isinstance(other, (PrimeField, ExtField)) and (self.p, self.modulus) == (other.p, other.modulus)

    def __hash__(self):
        return hash((self.p, self.modulus))


def build_extension_modulus(p: int, k: int) -> tuple[int, ...]:
    """First monic irreducible of degree k, coefficients read high to low."""
    require_prime(p)
    if k < 1:
        raise ValueError("degree must be positive")
    if k == 1:
        return (0, 1)
    for tail in product(range(p), repeat=k):
        modulus = tuple(reversed(tail)) + (1,)
        if modulus[0] == 0:
            continue
        if is_irreducible(modulus, p):
            return modulus
    raise AssertionError("unreachable: irreducibles exist in every degree")


@functools.lru_cache(maxsize=None)
def build_extension_field(p: int, k: int):
    """The field GF(p^k) with a reproducible choice of modulus."""
    if k == 1:
        return PrimeField(p)
    return ExtField(p, build_extension_modulus(p, k))


def GF(p: int, k: int = 1):
    return build_extension_field(p, k)


def field_of_order(q: int):
    """GF(q) for a prime power q."""
    f = factorize(q) if q > 1 else {}
    if len(f) != 1:
        raise ValueError(f"{q} is not a prime power")
    ((p, k),) = f.items()
    return GF(p, k)


@functools.lru_cache(maxsize=None)
def _primitive_element(field):
    q = field.order
    prime_factors = list(factorize(q - 1)) if q > 2 else []
    for i in range(1, q):
        g = field.from_index(i)
        if all(g ** ((q - 1) // r) != 1 for r in prime_factors):
            return g
    raise AssertionError("unreachable: the multiplicative group is cyclic")


def primitive_element(field):
    return _primitive_element(field)


def primitive_nth_root(field, n: int):
    """Element of exact multiplicative order n, deterministic."""
    q = field.order
    if n < 1 or (q - 1) % n:
        raise ValueError(f"{n} does not divide |{field.describe()}*| = {q - 1}")
    if n == 1:
        return field.one
    return primitive_element(field) ** ((q - 1) // n)


def element_order(x) -> int:
    q = x.field.order
    if not x:
        raise ValueError("zero has no multiplicative order")
    k = q - 1
    for r in factorize(q - 1) if q > 2 else {}:
        while k % r == 0 and x ** (k // r) == 1:
            k //= r
    return k
