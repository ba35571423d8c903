"""Small exact-integer helpers: primality, valuations, Bezout coefficients."""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd

from sympy import factorint
from sympy import isprime as _isprime


@lru_cache(maxsize=4096)
def is_prime(n: int) -> bool:
    return n >= 2 and bool(_isprime(n))


def prime_factors(n: int) -> list[int]:
    n = abs(n)
    if n <= 1:
        return []
    return sorted(factorint(n))


def vp_int(n: int, p: int) -> int:
    """p-adic valuation of a nonzero integer."""
    if n == 0:
        raise ValueError("valuation of 0 is infinite")
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def vp(x: Fraction | int, p: int) -> int:
    """Valuation of a nonzero rational; negative when p divides the denominator."""
    x = Fraction(x)
    if x == 0:
        raise ValueError("valuation of 0 is infinite")
    v = 0
    if x.numerator % p == 0:
        v += vp_int(x.numerator, p)
    if x.denominator % p == 0:
        v -= vp_int(x.denominator, p)
    return v


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with a*x + b*y = g = gcd(a, b) >= 0."""
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    if old_r < 0:
        old_r, old_x, old_y = -old_r, -old_x, -old_y
    return old_r, old_x, old_y


def bezout_min_first(a: int, b: int) -> tuple[int, int]:
    """Solve a*x + b*y = 1 with x the least non-negative solution.

    Requires gcd(a, b) = 1.  When |b| = 1 the first coefficient is 0.
    """
    g, x, y = xgcd(a, b)
    if g != 1:
        raise ValueError(f"gcd({a}, {b}) = {g} != 1")
    m = abs(b)
    shift = x // m if m else 0
    x -= shift * m
    # a*(x - t*m) + b*(y + t*m*a/b) keeps the identity
    y += shift * m * a // b if m else 0
    assert a * x + b * y == 1
    return x, y


def content(values) -> int:
    g = 0
    for v in values:
        g = gcd(g, v)
    return g
