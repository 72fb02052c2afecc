"""The rational field, backed by :class:`fractions.Fraction`."""

from __future__ import annotations

from fractions import Fraction


def icbrt(n: int) -> int:
    """Floor of the real cube root of a nonnegative integer."""
    if n < 0:
        raise ValueError("icbrt expects a nonnegative integer")
    if n < 2:
        return n
    x = 1 << ((n.bit_length() + 2) // 3)
    while True:
        y = (2 * x + n // (x * x)) // 3
        if y >= x:
            break
        x = y
    while x * x * x > n:
        x -= 1
    while (x + 1) ** 3 <= n:
        x += 1
    return x


def exact_cube_root(n: int) -> int | None:
    """Return s with s**3 == n, or None."""
    s = icbrt(abs(n))
    if s ** 3 != abs(n):
        return None
    return s if n >= 0 else -s


def is_cube_rational(r) -> tuple[bool, Fraction | None]:
    """Decide whether ``r`` is the cube of a rational number.

    Returns ``(True, s)`` with ``s**3 == r`` or ``(False, None)``.  Works on
    the reduced fraction, so numerator and denominator must both be cubes.
    """
    r = Fraction(r)
    if r == 0:
        raise ValueError("is_cube_rational is undefined at zero")
    num = exact_cube_root(r.numerator)
    if num is None:
        return False, None
    den = exact_cube_root(r.denominator)
    if den is None:
        return False, None
    return True, Fraction(num, den)


class RationalField:
    """Descriptor for QQ; elements are plain ``Fraction`` objects."""

    characteristic = 0
    order = None
    zero = Fraction(0)
    one = Fraction(1)

    def __call__(self, x) -> Fraction:
        return Fraction(x)

    def render(self, x) -> str:
        return str(Fraction(x))

    def describe(self) -> str:
        return "QQ"

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")


QQ = RationalField()


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational number: {text!r}") from exc
