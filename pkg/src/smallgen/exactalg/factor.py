"""Factorization of integer polynomials over the rationals.

Squarefree decomposition over Z, factorization modulo a small good prime,
quadratic multifactor Hensel lifting, then subset recombination (Zassenhaus).
Candidate prime factor degrees are intersected over several primes first, which
settles most irreducibility questions without any recombination.
"""

from __future__ import annotations

import math
from itertools import combinations
from typing import Sequence

from .arith import is_prime
from .finite_field import (
    factor_mod_p_lists,
    fp_reduce,
    fp_xgcd,
    is_squarefree_mod_p,
)
from .polynomial import (
    IntPolynomial,
    content,
    pderiv,
    pdivmod,
    pexact_div_int,
    pgcd_q,
    primitive_int,
    trim,
)

N_TRIAL_PRIMES = 6


# --- arithmetic modulo a (not necessarily prime) modulus -------------------

def _mod(a, m):
    return trim([c % m for c in a])


def _mul_mod(a, b, m):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _mod(out, m)


def _divmod_monic(a, b, m):
    # b monic modulo m
    r = [c % m for c in a]
    db = len(b) - 1
    if len(r) - 1 < db:
        return [], trim(r)
    q = [0] * (len(r) - db)
    for k in range(len(r) - 1 - db, -1, -1):
        c = r[k + db] % m
        q[k] = c
        if c:
            for j in range(db + 1):
                r[k + j] = (r[k + j] - c * b[j]) % m
    return trim(q), trim(r[:db])


def _sub_mod(a, b, m):
    n = max(len(a), len(b))
    return trim([((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % m
                 for i in range(n)])


def _add_mod(a, b, m):
    n = max(len(a), len(b))
    return trim([((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % m
                 for i in range(n)])


def _symmetric(a, m):
    half = m // 2
    return trim([c - m if c > half else c for c in (x % m for x in a)])


def _hensel_step(f, g, h, s, t, m):
    """One quadratic step: f = g h mod m (h monic), s g + t h = 1 mod m -> mod m^2."""
    m2 = m * m
    e = _sub_mod(f, _mul_mod(g, h, m2), m2)
    q, r = _divmod_monic(_mul_mod(s, e, m2), h, m2)
    g2 = _add_mod(g, _add_mod(_mul_mod(t, e, m2), _mul_mod(q, g, m2), m2), m2)
    h2 = _add_mod(h, r, m2)
    b = _sub_mod(_add_mod(_mul_mod(s, g2, m2), _mul_mod(t, h2, m2), m2), [1], m2)
    c, d = _divmod_monic(_mul_mod(s, b, m2), h2, m2)
    s2 = _sub_mod(s, d, m2)
    t2 = _sub_mod(t, _add_mod(_mul_mod(t, b, m2), _mul_mod(c, g2, m2), m2), m2)
    return g2, h2, s2, t2


def _prod_mod(polys, m):
    out = [1]
    for u in polys:
        out = _mul_mod(out, u, m)
    return out


def hensel_lift(f: Sequence[int], factors: list[list[int]], p: int, k: int) -> list[list[int]]:
    """Lift monic factors of f mod p (f = lc * prod factors) to monic factors mod p^k."""
    M = p ** k
    f = _mod(f, M)
    lc = f[-1]
    if len(factors) == 1:
        inv = pow(lc, -1, M)
        return [_mod([c * inv for c in f], M)]
    half = len(factors) // 2
    A, B = factors[:half], factors[half:]
    g = _mod([c * lc for c in _prod_mod(A, p)], p)
    h = _prod_mod(B, p)
    _, s, t = fp_xgcd(g, h, p)
    m = p
    while m < M:
        g, h, s, t = _hensel_step(f, g, h, s, t, m)
        m *= m
    g, h = _mod(g, M), _mod(h, M)
    inv = pow(lc, -1, M)
    g = _mod([c * inv for c in g], M)
    return hensel_lift(g, A, p, k) + hensel_lift(h, B, p, k)


# --- squarefree decomposition over Z ---------------------------------------

def squarefree_decomposition_z(f: Sequence[int]) -> list[tuple[list[int], int]]:
    """Yun's algorithm; f primitive with positive lead -> [(primitive a_i, i)]."""
    out = []
    f = list(f)
    if len(f) <= 1:
        return out
    df = pderiv(f)
    c = primitive_int(pgcd_q(f, df))
    w = pexact_div_int(f, c)
    i = 1
    while len(w) > 1:
        y = primitive_int(pgcd_q(w, c))
        z = pexact_div_int(w, y)
        if len(z) > 1:
            out.append((primitive_int(z), i))
        i += 1
        w = y
        c = pexact_div_int(c, y)
    return out


# --- Zassenhaus ------------------------------------------------------------

def _subset_sums(degs: list[int]) -> set[int]:
    sums = {0}
    for d in degs:
        sums |= {s + d for s in sums}
    return sums


def _good_primes(f: list[int], count: int):
    p = 2
    found = 0
    while found < count:
        if f[-1] % p and is_squarefree_mod_p(f, p):
            yield p
            found += 1
        p += 1
        while not is_prime(p):
            p += 1


def _mignotte_bound(f: list[int]) -> int:
    n = len(f) - 1
    norm2 = math.isqrt(sum(c * c for c in f)) + 1
    return (1 << n) * norm2 * abs(f[-1])


def _zassenhaus(f: list[int]) -> list[list[int]]:
    """Irreducible factors of a squarefree primitive f with f(0) != 0, deg >= 2."""
    n = len(f) - 1
    best = None
    possible = set(range(n + 1))
    for p in _good_primes(f, N_TRIAL_PRIMES):
        _, facs = factor_mod_p_lists(f, p)
        degs = [len(g) - 1 for g, _ in facs]
        possible &= _subset_sums(degs)
        if best is None or len(facs) < len(best[1]):
            best = (p, [g for g, _ in facs])
        if possible == {0, n}:
            return [f]
    p, modfacs = best
    if len(modfacs) == 1:
        return [f]
    bound = 2 * _mignotte_bound(f) * abs(f[-1])
    k = 1
    while p ** k <= bound:
        k += 1
    M = p ** k
    lifted = hensel_lift(f, modfacs, p, k)
    result = []
    remaining = lifted
    g = list(f)
    size = 1
    while 2 * size <= len(remaining):
        found = False
        lc = g[-1]
        for S in combinations(range(len(remaining)), size):
            deg = sum(len(remaining[i]) - 1 for i in S)
            if deg not in possible:
                continue
            cand = _symmetric([c * lc for c in _prod_mod([remaining[i] for i in S], M)], M)
            if not cand or cand[0] == 0 or (lc * g[0]) % cand[0]:
                continue
            cand = primitive_int(cand)
            q, r = pdivmod(g, cand)
            if r or any(c.denominator != 1 for c in q):
                continue
            result.append(cand)
            g = [int(c) for c in q]
            remaining = [u for i, u in enumerate(remaining) if i not in S]
            found = True
            break
        if not found:
            size += 1
    result.append(primitive_int(g))
    return result


def _factor_squarefree(f: list[int]) -> list[list[int]]:
    out = []
    if f[0] == 0:
        k = next(i for i, c in enumerate(f) if c)
        f = f[k:]
        out.append([0, 1])
    if len(f) - 1 <= 1:
        if len(f) == 2:
            out.append(primitive_int(f))
        return out
    if len(f) == 3:
        a2, a1, a0 = f[2], f[1], f[0]
        disc = a1 * a1 - 4 * a2 * a0
        r = math.isqrt(disc) if disc >= 0 else -1
        if r >= 0 and r * r == disc:
            roots = [(-a1 + r, 2 * a2), (-a1 - r, 2 * a2)]
            out.extend(primitive_int([-num, den]) for num, den in roots)
            return out
        out.append(f)
        return out
    out.extend(_zassenhaus(f))
    return out


def factor_over_Q(f: IntPolynomial) -> tuple[int, list[tuple[IntPolynomial, int]]]:
    """Return (content, [(primitive irreducible factor, multiplicity)]).

    ``content * prod(g**e)`` reproduces ``f``; factors are sorted by degree and
    then coefficients.
    """
    if f.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    c = content(f.coeffs)
    if f.lead < 0:
        c = -c
    prim = [x // c for x in f.coeffs]
    if len(prim) == 1:
        return c, []
    facs: dict[tuple, int] = {}
    for part, e in squarefree_decomposition_z(prim):
        for g in _factor_squarefree(part):
            key = tuple(g)
            facs[key] = facs.get(key, 0) + e
    out = [(IntPolynomial(k), e) for k, e in facs.items()]
    out.sort(key=lambda t: (t[0].degree, t[0].coeffs[::-1]))
    return c, out


def irreducible_factors(f: IntPolynomial) -> list[IntPolynomial]:
    return [g for g, _ in factor_over_Q(f)[1]]


def is_irreducible(f: IntPolynomial) -> bool:
    if f.degree < 1:
        return False
    _, facs = factor_over_Q(f)
    return len(facs) == 1 and facs[0][1] == 1
