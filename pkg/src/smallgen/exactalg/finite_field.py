"""Polynomial arithmetic and factorization over the prime field GF(p).

Polynomials are coefficient lists (constant term first) of integers in
``range(p)``; the zero polynomial is ``[]``.  Factorization is squarefree
decomposition, distinct-degree splitting and Cantor-Zassenhaus equal-degree
splitting driven by a fixed-seed generator so output is reproducible.
"""

from __future__ import annotations

import random
from typing import Sequence

from .arith import is_prime
from .polynomial import IntPolynomial

EDF_SEED = 0x0DDB_A11_5EED


def fp_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def fp_reduce(a: Sequence[int], p: int) -> list[int]:
    return fp_trim([c % p for c in a])


def fp_add(a, b, p):
    n = max(len(a), len(b))
    return fp_trim([((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % p
                    for i in range(n)])


def fp_sub(a, b, p):
    n = max(len(a), len(b))
    return fp_trim([((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p
                    for i in range(n)])


def fp_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return fp_trim([c % p for c in out])


def fp_scale(a, c, p):
    return fp_trim([x * c % p for x in a])


def fp_divmod(a, b, p):
    if not b:
        raise ZeroDivisionError("division by zero polynomial mod p")
    r = list(a)
    db = len(b) - 1
    if len(r) - 1 < db:
        return [], fp_trim(r)
    inv = pow(b[-1], -1, p)
    q = [0] * (len(r) - db)
    for k in range(len(r) - 1 - db, -1, -1):
        c = r[k + db] * inv % p
        q[k] = c
        if c:
            for j in range(db + 1):
                r[k + j] = (r[k + j] - c * b[j]) % p
    return fp_trim(q), fp_trim(r[:db])


def fp_mod(a, b, p):
    return fp_divmod(a, b, p)[1]


def fp_monic(a, p):
    if not a:
        return []
    return fp_scale(a, pow(a[-1], -1, p), p)


def fp_gcd(a, b, p):
    a, b = fp_trim(list(a)), fp_trim(list(b))
    while b:
        a, b = b, fp_mod(a, b, p)
    return fp_monic(a, p)


def fp_xgcd(a, b, p):
    """Return (g, s, t) with s*a + t*b = g monic."""
    r0, r1 = fp_trim(list(a)), fp_trim(list(b))
    s0, s1, t0, t1 = [1], [], [], [1]
    while r1:
        q, r = fp_divmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, fp_sub(s0, fp_mul(q, s1, p), p)
        t0, t1 = t1, fp_sub(t0, fp_mul(q, t1, p), p)
    if not r0:
        return [], [], []
    inv = pow(r0[-1], -1, p)
    return fp_scale(r0, inv, p), fp_scale(s0, inv, p), fp_scale(t0, inv, p)


def fp_powmod(base, e: int, mod, p):
    out = [1]
    b = fp_mod(base, mod, p)
    while e:
        if e & 1:
            out = fp_mod(fp_mul(out, b, p), mod, p)
        e >>= 1
        if e:
            b = fp_mod(fp_mul(b, b, p), mod, p)
    return out


def fp_deriv(a, p):
    return fp_trim([i * a[i] % p for i in range(1, len(a))])


def _pth_root(a, p):
    # a(x) = b(x^p) -> b(x); coefficients are fixed by Frobenius in GF(p)
    return fp_trim([a[i] for i in range(0, len(a), p)])


def squarefree_decomposition(f, p) -> list[tuple[list[int], int]]:
    """Monic f over GF(p) -> [(g_i, e_i)] with f = prod g_i^e_i, g_i squarefree."""
    out: list[tuple[list[int], int]] = []

    def rec(f, mult):
        if len(f) <= 1:
            return
        df = fp_deriv(f, p)
        if not df:
            rec(_pth_root(f, p), mult * p)
            return
        c = fp_gcd(f, df, p)
        w = fp_divmod(f, c, p)[0]
        i = 1
        while len(w) > 1:
            y = fp_gcd(w, c, p)
            z = fp_divmod(w, y, p)[0]
            if len(z) > 1:
                out.append((z, i * mult))
            i += 1
            w = y
            c = fp_divmod(c, y, p)[0]
        if len(c) > 1:
            rec(_pth_root(c, p), mult * p)

    rec(fp_monic(f, p), 1)
    return out


def distinct_degree(f, p) -> list[tuple[list[int], int]]:
    """Squarefree monic f -> [(product of all degree-k factors, k)]."""
    out = []
    h = [0, 1]
    k = 0
    f = list(f)
    while len(f) - 1 >= 2 * (k + 1):
        k += 1
        h = fp_powmod(h, p, f, p)
        g = fp_gcd(f, fp_sub(h, [0, 1], p), p)
        if len(g) > 1:
            out.append((g, k))
            f = fp_divmod(f, g, p)[0]
            h = fp_mod(h, f, p)
    if len(f) > 1:
        out.append((f, len(f) - 1))
    return out


def _random_poly(deg: int, p: int, rng: random.Random) -> list[int]:
    return fp_trim([rng.randrange(p) for _ in range(deg)] + [1])


def equal_degree(f, k: int, p: int, rng: random.Random) -> list[list[int]]:
    """Split a squarefree monic product of degree-k irreducibles."""
    n = len(f) - 1
    if n == k:
        return [f]
    while True:
        a = _random_poly(rng.randrange(1, n), p, rng)
        if p == 2:
            # trace map to GF(2)
            t = list(a)
            s = list(a)
            for _ in range(k - 1):
                t = fp_mod(fp_mul(t, t, p), f, p)
                s = fp_add(s, t, p)
            g = fp_gcd(f, s, p)
        else:
            g = fp_gcd(f, a, p)
            if len(g) == 1:
                b = fp_powmod(a, (p ** k - 1) // 2, f, p)
                g = fp_gcd(f, fp_sub(b, [1], p), p)
        if 1 < len(g) < len(f):
            h = fp_divmod(f, g, p)[0]
            return equal_degree(g, k, p, rng) + equal_degree(h, k, p, rng)


def factor_mod_p_lists(f: Sequence[int], p: int, seed: int = EDF_SEED):
    """Factor an integer coefficient list mod p.

    Returns (leading unit, [(monic irreducible factor, multiplicity)]) sorted by
    (degree, coefficients).
    """
    g = fp_reduce(f, p)
    if not g:
        raise ValueError(f"polynomial vanishes mod {p}")
    lc = g[-1]
    rng = random.Random(seed ^ p)
    factors = []
    for part, e in squarefree_decomposition(g, p):
        for prod, k in distinct_degree(part, p):
            for irr in equal_degree(prod, k, p, rng):
                factors.append((irr, e))
    factors.sort(key=lambda t: (len(t[0]), t[0][::-1]))
    return lc, factors


def factor_mod_p(f: IntPolynomial, p: int, seed: int = EDF_SEED) -> list[tuple[IntPolynomial, int]]:
    """Monic irreducible factors of f over GF(p) with multiplicities."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    _, facs = factor_mod_p_lists(f.coeffs, p, seed)
    return [(IntPolynomial(g), e) for g, e in facs]


def is_squarefree_mod_p(f: Sequence[int], p: int) -> bool:
    g = fp_reduce(f, p)
    if len(g) <= 1:
        return bool(g)
    return len(fp_gcd(g, fp_deriv(g, p), p)) == 1


def count_roots_mod_p(f: Sequence[int], p: int) -> int:
    """Number of distinct roots in GF(p): deg gcd(x^p - x, f)."""
    g = fp_monic(fp_reduce(f, p), p)
    if len(g) <= 1:
        return 0
    xp = fp_powmod([0, 1], p, g, p)
    return len(fp_gcd(g, fp_sub(xp, [0, 1], p), p)) - 1
