"""Integer helpers: primality, factorization, squares."""

from __future__ import annotations

import math
import random
from functools import lru_cache

# Deterministic for n < 3.3e24 (Sorenson & Webster); we only rely on < 2^64.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
PROBABLE_WITNESSES = 64
PRIMALITY_SEED = 0x5EED_CAFE_F00D_0001


def _mr_round(n: int, d: int, s: int, a: int) -> bool:
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def primality(n: int) -> tuple[bool, bool]:
    """Return ``(is_prime, probable)``.

    Below 2^64 the answer is deterministic and ``probable`` is False.  Above,
    64 seeded random witnesses are used and a positive answer is flagged.
    """
    if n < 2:
        return False, False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p, False
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    if n < 1 << 64:
        return all(_mr_round(n, d, s, a) for a in _MR_BASES), False
    rng = random.Random(PRIMALITY_SEED ^ n.bit_length())
    for _ in range(PROBABLE_WITNESSES):
        a = rng.randrange(2, n - 1)
        if not _mr_round(n, d, s, a):
            return False, False
    return True, True


def is_prime(n: int) -> bool:
    return primality(n)[0]


def factorint(n: int) -> dict[int, int]:
    """Prime factorization of |n| (n != 0)."""
    n = abs(n)
    if n == 0:
        raise ValueError("cannot factor 0")
    out: dict[int, int] = {}
    for p in (2, 3, 5, 7, 11, 13):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    if n == 1:
        return out
    if n < 1 << 40:
        p = 17
        while p * p <= n:
            while n % p == 0:
                out[p] = out.get(p, 0) + 1
                n //= p
            p += 2
        if n > 1:
            out[n] = out.get(n, 0) + 1
        return out
    from sympy import factorint as _sympy_factorint

    for p, e in _sympy_factorint(n).items():
        out[int(p)] = out.get(int(p), 0) + int(e)
    return out


def primes_dividing(n: int) -> list[int]:
    return sorted(factorint(n))


def is_square(n: int) -> bool:
    if n < 0:
        return False
    r = math.isqrt(n)
    return r * r == n


def squarefree_kernel(n: int) -> int:
    """Signed squarefree part of n: n = kernel * s^2."""
    if n == 0:
        return 0
    sign = -1 if n < 0 else 1
    out = 1
    for p, e in factorint(n).items():
        if e % 2:
            out *= p
    return sign * out


def is_squarefree_int(n: int) -> bool:
    return all(e == 1 for e in factorint(n).values()) if abs(n) > 1 else True


@lru_cache(maxsize=None)
def euler_phi(q: int) -> int:
    if q < 1:
        raise ValueError("phi needs q >= 1")
    out = q
    for p in factorint(q) if q > 1 else ():
        out -= out // p
    return out


def divisors(n: int) -> list[int]:
    divs = [1]
    for p, e in factorint(n).items() if n > 1 else ():
        divs = [d * p ** k for d in divs for k in range(e + 1)]
    return sorted(divs)


def lcm(a: int, b: int) -> int:
    return a // math.gcd(a, b) * b
