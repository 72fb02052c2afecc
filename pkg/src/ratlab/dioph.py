"""The surface t(x^2 + y^2) = (4z - 7t)(z^2 - 2t^2).

Over R it has two components: the slices with z/t >= 7/4 and those with
|z/t| <= sqrt(2).  On a slice (z : t) a rational point exists iff
M = t(4z - 7t)(z^2 - 2t^2) is a sum of two integer squares, because
M = (tx)^2 + (ty)^2.  The small component never passes that test.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd, isqrt

from .certificate import Certificate, GuardExceeded, Verdict
from .exactnum import factorize

MAX_M = 2 ** 63
MAX_HEIGHT = 10 ** 4


class Component(str, enum.Enum):
    LARGE = "LARGE"
    SMALL = "SMALL"
    NEITHER = "NEITHER"


def swd_equation(x: int, y: int, z: int, t: int) -> int:
    """Left side minus right side."""
    return t * (x * x + y * y) - (4 * z - 7 * t) * (z * z - 2 * t * t)


@dataclass(frozen=True)
class SwdPoint:
    x: int
    y: int
    z: int
    t: int
    on_surface: bool = field(init=False)

    def __post_init__(self):
        vals = (self.x, self.y, self.z, self.t)
        if not any(vals):
            raise ValueError("the zero vector is not a projective point")
        g = gcd(*vals)
        # t > 0, or t = 0 and the first nonzero of x, y, z positive
        lead = self.t or next(v for v in vals if v)
        if lead < 0:
            g = -g
        for name, v in zip("xyzt", vals):
            object.__setattr__(self, name, v // g)
        object.__setattr__(self, "on_surface", swd_equation(self.x, self.y, self.z, self.t) == 0)

    @classmethod
    def parse(cls, text: str) -> "SwdPoint":
        parts = text.strip().strip("[]").replace(":", ",").split(",")
        if len(parts) != 4:
            raise ValueError("a point needs four integer coordinates x,y,z,t")
        return cls(*(int(p) for p in parts))

    def coords(self):
        return [self.x, self.y, self.z, self.t]

    def __str__(self):
        return "[" + ":".join(map(str, self.coords())) + "]"


def swd_check(P: SwdPoint) -> bool:
    return swd_equation(P.x, P.y, P.z, P.t) == 0


def _check_slice(z: int, t: int):
    if t <= 0:
        raise ValueError("t must be positive")
    if gcd(z, t) != 1:
        raise ValueError(f"(z, t) = ({z}, {t}) is not primitive")


def swd_component(z: int, t: int) -> Component:
    _check_slice(z, t)
    if 4 * z >= 7 * t:
        return Component.LARGE
    if z * z <= 2 * t * t:
        return Component.SMALL
    return Component.NEITHER


def slice_value(z: int, t: int) -> int:
    return t * (4 * z - 7 * t) * (z * z - 2 * t * t)


@dataclass(frozen=True)
class ObstructionProof:
    M: int
    factorization: tuple  # ((prime, exponent), ...)
    blocking_prime: int

    def __post_init__(self):
        prod = 1
        for q, e in self.factorization:
            prod *= q ** e
        if prod != self.M:
            raise AssertionError("factorization does not multiply back to M")
        exps = dict(self.factorization)
        if self.blocking_prime % 4 != 3 or exps.get(self.blocking_prime, 0) % 2 == 0:
            raise AssertionError("blocking prime must be 3 mod 4 with odd exponent")

    def to_json(self):
        return {"M": self.M, "factorization": [list(pe) for pe in self.factorization],
                "blocking_prime": self.blocking_prime}


@lru_cache(maxsize=65536)
def _factor(n: int) -> tuple:
    return tuple(sorted(factorize(n).items())) if n > 1 else ()


def _merge_factorizations(parts) -> tuple:
    acc: dict[int, int] = {}
    for n in parts:
        for q, e in _factor(n):
            acc[q] = acc.get(q, 0) + e
    return tuple(sorted(acc.items()))


def _two_squares_verdict(M: int, fac) -> tuple[bool, ObstructionProof | None]:
    for q, e in fac:
        if q % 4 == 3 and e % 2:
            return False, ObstructionProof(M, fac, q)
    return True, None


def sum_two_squares_test(M: int, factors=None) -> tuple[bool, ObstructionProof | None]:
    """True iff every prime 3 mod 4 divides M to an even power.

    ``factors`` may list integers whose product is M, to save factoring work.
    """
    if M < 0:
        raise ValueError("M must be nonnegative")
    if M > MAX_M:
        raise ValueError(f"M = {M} exceeds 2^63")
    if M == 0:
        return True, None
    fac = _merge_factorizations(factors) if factors else _factor(M)
    return _two_squares_verdict(M, fac)


@lru_cache(maxsize=65536)
def _prime_two_squares(q: int) -> tuple[int, int]:
    if q == 2:
        return 1, 1
    for a in range(1, isqrt(q) + 1):
        b2 = q - a * a
        b = isqrt(b2)
        if b * b == b2:
            return a, b
    raise ValueError(f"{q} is not a sum of two squares")


def two_squares(M: int, fac=None) -> tuple[int, int] | None:
    """Some (u, v) with u^2 + v^2 = M, or None.

    Each prime factor is split by a direct scan and the pieces are combined
    with Gaussian-integer multiplication.
    """
    if M == 0:
        return 0, 0
    fac = fac if fac is not None else _factor(M)
    u, v = 1, 0
    for q, e in fac:
        if q % 4 == 3:
            if e % 2:
                return None
            s = q ** (e // 2)
            u, v = u * s, v * s
            continue
        a, b = _prime_two_squares(q)
        for _ in range(e):
            u, v = u * a - v * b, u * b + v * a
    u, v = abs(u), abs(v)
    if u * u + v * v != M:
        raise AssertionError("two-squares composition failed")
    return min(u, v), max(u, v)


def swd_no_point_certificate(z: int, t: int) -> Certificate:
    if swd_component(z, t) is not Component.SMALL:
        raise ValueError(f"({z}, {t}) is not on the small component")
    M = t * (7 * t - 4 * z) * (2 * t * t - z * z)
    ok, proof = sum_two_squares_test(M, (t, 7 * t - 4 * z, 2 * t * t - z * z))
    if ok:
        verdict = Verdict.REFUTED
        ev = {"z": z, "t": t, "M": M, "decomposition": list(two_squares(M))}
    else:
        verdict = Verdict.NO_POINT_ON_SLICE
        ev = {"z": z, "t": t, "M": M, "proof": proof.to_json()}
    return Certificate("swd check", {"z": z, "t": t}, verdict, ev,
                       ["a point on slice (z:t) gives M = (tx)^2 + (ty)^2",
                        "a prime 3 mod 4 to an odd power blocks every such decomposition"])


def point_on_slice(z: int, t: int) -> SwdPoint | None:
    M = slice_value(z, t)
    if M < 0:
        return None
    fac = _merge_factorizations((t, abs(4 * z - 7 * t), abs(z * z - 2 * t * t)))
    uv = two_squares(M, fac)
    if uv is None:
        return None
    u, v = uv
    P = SwdPoint(u, v, t * z, t * t)
    if not P.on_surface:
        raise AssertionError(f"{P} does not satisfy the equation")
    return P


@dataclass
class ScanReport:
    height: int
    small_slices_checked: int = 0
    large_slices_checked: int = 0
    neither_slices: int = 0
    obstructions: list = field(default_factory=list)
    large_points_found: list = field(default_factory=list)
    large_without_point: int = 0
    failures: list = field(default_factory=list)

    def to_json(self):
        return {
            "height": self.height,
            "small_slices_checked": self.small_slices_checked,
            "large_slices_checked": self.large_slices_checked,
            "neither_slices": self.neither_slices,
            "obstructions": self.obstructions,
            "large_points_found": self.large_points_found,
            "large_without_point": self.large_without_point,
            "failures": self.failures,
        }


def swd_scan(H: int) -> ScanReport:
    if H < 1:
        raise ValueError("height must be positive")
    if H > MAX_HEIGHT:
        raise GuardExceeded(f"height {H} exceeds {MAX_HEIGHT}")
    rep = ScanReport(H)
    for t in range(1, H + 1):
        for z in range(-H, H + 1):
            if gcd(z, t) != 1:
                continue
            comp = swd_component(z, t)
            if comp is Component.SMALL:
                rep.small_slices_checked += 1
                a, b = 7 * t - 4 * z, 2 * t * t - z * z
                ok, proof = sum_two_squares_test(t * a * b, (t, a, b))
                if ok:
                    rep.failures.append({"z": z, "t": t, "M": t * a * b})
                else:
                    rep.obstructions.append([z, t, proof.blocking_prime])
            elif comp is Component.LARGE:
                rep.large_slices_checked += 1
                P = point_on_slice(z, t)
                if P is None:
                    rep.large_without_point += 1
                else:
                    rep.large_points_found.append(P.coords())
            else:
                rep.neither_slices += 1
    return rep


def scan_certificate(H: int) -> Certificate:
    rep = swd_scan(H)
    ok = not rep.failures and rep.large_points_found
    verdict = Verdict.VERIFIED if ok else Verdict.REFUTED
    return Certificate("swd scan", {"height": H}, verdict, rep.to_json(), [
        "every small-component slice is blocked by a prime 3 mod 4 to an odd power",
        "points on the large component are exhibited, density is not certified",
    ])


def check_point_certificate(P: SwdPoint) -> Certificate:
    verdict = Verdict.VERIFIED if swd_check(P) else Verdict.REFUTED
    ev = {"point": P.coords(), "on_surface": swd_check(P),
          "lhs": P.t * (P.x ** 2 + P.y ** 2),
          "rhs": (4 * P.z - 7 * P.t) * (P.z ** 2 - 2 * P.t ** 2)}
    return Certificate("swd check", {"point": str(P)}, verdict, ev, ["exact integer evaluation"])


def check_slice_certificate(z: int, t: int) -> Certificate:
    comp = swd_component(z, t)
    if comp is Component.SMALL:
        return swd_no_point_certificate(z, t)
    M = slice_value(z, t)
    ev = {"z": z, "t": t, "component": comp.value, "M": M}
    if comp is Component.NEITHER:
        ev["reason"] = "M < 0, so the slice has no real point"
        verdict = Verdict.NO_POINT_ON_SLICE
    else:
        P = point_on_slice(z, t)
        if P is None:
            ok, proof = sum_two_squares_test(M, (t, 4 * z - 7 * t, z * z - 2 * t * t))
            ev["proof"] = proof.to_json()
            verdict = Verdict.NO_POINT_ON_SLICE
        else:
            ev["point"] = P.coords()
            verdict = Verdict.VERIFIED
    return Certificate("swd check", {"z": z, "t": t}, verdict, ev,
                       ["a point on slice (z:t) gives M = (tx)^2 + (ty)^2"])
