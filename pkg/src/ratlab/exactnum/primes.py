"""Prime-number helpers: primality tests and multiplicative orders."""

from __future__ import annotations

from math import gcd

from sympy import factorint

# Deterministic Miller-Rabin: the first 13 primes as bases are correct
# for every n < 3317044064679887385961981.
MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
MR_LIMIT = 3317044064679887385961981


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n >= MR_LIMIT:
        raise ValueError(f"primality check is only certified below {MR_LIMIT}")
    for b in MR_BASES:
        if n % b == 0:
            return n == b
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for b in MR_BASES:
        x = pow(b, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def require_prime(p: int) -> int:
    if not isinstance(p, int) or not is_prime(p):
        raise ValueError(f"{p!r} is not a prime")
    return p


def factorize(n: int) -> dict[int, int]:
    """Prime factorization of a positive integer as ``{prime: exponent}``."""
    if n < 1:
        raise ValueError("factorize expects a positive integer")
    return {int(p): int(e) for p, e in sorted(factorint(n).items())}


def prime_part_removed(n: int, p: int) -> int:
    """|n| with every factor of p divided out."""
    n = abs(n)
    if n == 0:
        raise ValueError("zero has no prime-to-p part")
    while n % p == 0:
        n //= p
    return n


def multiplicative_order(p: int, n: int) -> int:
    """Least k >= 1 with p**k == 1 (mod n)."""
    if n < 1:
        raise ValueError("modulus must be positive")
    if gcd(p, n) != 1:
        raise ValueError(f"gcd({p}, {n}) != 1")
    if n == 1:
        return 1
    # Carmichael-free approach: start from phi(n) and strip prime factors.
    phi = 1
    for q, e in factorize(n).items():
        phi *= (q - 1) * q ** (e - 1)
    k = phi
    for q in factorize(phi):
        while k % q == 0 and pow(p, k // q, n) == 1:
            k //= q
    return k
