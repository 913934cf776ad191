"""Certified complex root enclosures and Mahler measures.

Roots are approximated with Aberth-Ehrlich iteration in mpmath, rounded to
dyadic Gaussian rationals and certified a posteriori with the Weierstrass
disc-radius test: with ``W_i = f(z_i) / (a_n prod_{j != i} (z_i - z_j))`` the
discs ``D(z_i, n |W_i|)`` cover the roots and every connected component holds
as many roots as discs.  Pairwise disjoint discs therefore isolate one root
each.  The certificate is computed in exact integer arithmetic.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

import mpmath
import numpy as np

from .intervals import (
    DEFAULT_TARGET_WIDTH,
    ComplexEnclosure,
    RealEnclosure,
    mpf_to_fraction,
    r_log,
    r_sqrt,
)
from .polynomial import (
    IntPolynomial,
    content,
    pdivmod,
    pexact_div_int,
    primitive_int,
)

START_PREC = 64
MAX_PREC = 1 << 16
REFERENCE_PREC = 128


class RootIsolationError(ArithmeticError):
    pass


def _initial_guesses(coeffs: tuple[int, ...]) -> list[complex]:
    n = len(coeffs) - 1
    lead = float(coeffs[-1])
    try:
        c = np.array([float(x) / lead for x in coeffs[::-1]])
        if not np.all(np.isfinite(c)):
            raise OverflowError
        r = list(np.roots(c))
    except (OverflowError, np.linalg.LinAlgError, ValueError):
        r = []
    if len(r) != n or not all(np.isfinite(r)):
        bound = 1 + max(abs(Fraction(x, coeffs[-1])) for x in coeffs[:-1])
        r = [float(bound) * 0.5 * complex(math.cos(2 * math.pi * k / n + 0.4),
                                           math.sin(2 * math.pi * k / n + 0.4))
             for k in range(n)]
    # Aberth needs distinct starting points
    out = []
    for k, z in enumerate(r):
        z = complex(z)
        while any(abs(z - w) < 1e-12 for w in out):
            z += complex(1e-6 * (k + 1), 1e-6)
        out.append(z)
    return out


def _aberth(coeffs, start, prec: int, max_iter: int = 400):
    with mpmath.workprec(prec + 20):
        cs = [mpmath.mpf(c) for c in coeffs]
        dcs = [i * cs[i] for i in range(1, len(cs))]
        z = [mpmath.mpc(w) for w in start]
        n = len(z)
        tol = mpmath.mpf(2) ** (-prec)
        for _ in range(max_iter):
            moved = mpmath.mpf(0)
            newz = list(z)
            for i in range(n):
                zi = z[i]
                fz = mpmath.polyval(cs[::-1], zi)
                dfz = mpmath.polyval(dcs[::-1], zi)
                if fz == 0:
                    continue
                ratio = fz / dfz if dfz != 0 else mpmath.mpc(tol, tol)
                s = mpmath.fsum(1 / (zi - z[j]) for j in range(n) if j != i and zi != z[j])
                denom = 1 - ratio * s
                step = ratio / denom if denom != 0 else ratio
                newz[i] = zi - step
                mag = abs(step) / max(1, abs(zi))
                if mag > moved:
                    moved = mag
            z = newz
            if moved < tol:
                break
        return z


def _gauss_round(z, k: int) -> tuple[int, int]:
    scale = 1 << k
    return round(mpf_to_fraction(z.real) * scale), round(mpf_to_fraction(z.imag) * scale)


def _symmetrize(pts: list[tuple[int, int]], k: int) -> list[tuple[int, int]] | None:
    """Force exact conjugate symmetry of the centres of a real polynomial."""
    thresh = 1 << max(4, k // 2)
    real = [(a, 0) for a, b in pts if abs(b) <= thresh]
    upper = [(a, b) for a, b in pts if b > thresh]
    lower = [(a, b) for a, b in pts if b < -thresh]
    if len(upper) != len(lower):
        return None
    out = list(real)
    remaining = list(lower)
    for a, b in upper:
        j = min(range(len(remaining)),
                key=lambda t: (remaining[t][0] - a) ** 2 + (remaining[t][1] + b) ** 2)
        a2, b2 = remaining.pop(j)
        ca, cb = (a + a2) // 2, (b - b2) // 2
        out.append((ca, cb))
        out.append((ca, -cb))
    return out


def _certify(coeffs: tuple[int, ...], pts: list[tuple[int, int]], k: int, rbits: int):
    """Return dyadic upper bounds R_i (numerators over 2**rbits) or None."""
    n = len(coeffs) - 1
    lead = coeffs[-1]
    powers = [1 << (k * (n - j)) for j in range(n + 1)]
    radii = []
    for i, (a, b) in enumerate(pts):
        # N = 2^{kn} f(z_i)
        nr, ni = coeffs[n], 0
        for j in range(n - 1, -1, -1):
            nr, ni = nr * a - ni * b + coeffs[j] * powers[j], nr * b + ni * a
        pr, pi = 1, 0
        for j, (c, d) in enumerate(pts):
            if j == i:
                continue
            da, db = a - c, b - d
            if da == 0 and db == 0:
                return None
            pr, pi = pr * da - pi * db, pr * db + pi * da
        # r_i^2 = n^2 |N|^2 / (lead^2 |P|^2 4^k); scaled by 4^rbits
        num = n * n * (nr * nr + ni * ni) << (2 * rbits)
        den = lead * lead * (pr * pr + pi * pi) << (2 * k)
        q = -(-num // den)
        r = math.isqrt(q)
        if r * r < q:
            r += 1
        radii.append(r + 1)
    # disjointness: |z_i - z_j| > R_i + R_j, compared at common scale 2^max(k, rbits)
    for i in range(n):
        ai, bi = pts[i]
        for j in range(i + 1, n):
            aj, bj = pts[j]
            dist2 = ((ai - aj) ** 2 + (bi - bj) ** 2) << (2 * rbits)
            rad = (radii[i] + radii[j]) << k
            if dist2 <= rad * rad:
                return None
    return radii


def _sort_key(e: ComplexEnclosure):
    return (e.center_re, e.center_im)


@lru_cache(maxsize=4096)
def _roots_cached(coeffs: tuple[int, ...], target_width: Fraction) -> tuple[ComplexEnclosure, ...]:
    n = len(coeffs) - 1
    if n == 1:
        root = Fraction(-coeffs[0], coeffs[1])
        return (ComplexEnclosure(root, Fraction(0), Fraction(0), 0),)
    prec = START_PREC
    start = _initial_guesses(coeffs)
    while prec <= MAX_PREC:
        approx = _aberth(coeffs, start, prec)
        start = approx
        k = prec
        pts = [_gauss_round(z, k) for z in approx]
        pts = _symmetrize(pts, k)
        if pts is not None:
            rbits = prec + 8
            radii = _certify(coeffs, pts, k, rbits)
            if radii is not None:
                encl = [ComplexEnclosure(Fraction(a, 1 << k), Fraction(b, 1 << k),
                                         Fraction(r, 1 << rbits), prec)
                        for (a, b), r in zip(pts, radii)]
                if all(e.width <= target_width for e in encl):
                    return tuple(sorted(encl, key=_sort_key))
        prec *= 2
    raise RootIsolationError(f"could not isolate roots within {MAX_PREC} bits")


def complex_roots(f: IntPolynomial, target_width: Fraction = DEFAULT_TARGET_WIDTH) -> list[ComplexEnclosure]:
    """Certified disjoint enclosures of all roots of a squarefree f.

    The list is sorted by (real part, imaginary part) of the centres, which
    fixes the designated-root convention used throughout the package.
    """
    if f.degree < 1:
        raise ValueError("complex_roots needs degree >= 1")
    from .polynomial import is_squarefree
    if not is_squarefree(f):
        raise ValueError("complex_roots needs a squarefree polynomial")
    return list(_roots_cached(f.coeffs, Fraction(target_width)))


# ---------------------------------------------------------------------------
# Kronecker / cyclotomic detection
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def cyclotomic(n: int) -> tuple[int, ...]:
    """Coefficients of the n-th cyclotomic polynomial."""
    f = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            f = pexact_div_int(f, list(cyclotomic(d)))
    return tuple(f)


def _totient_preimages_upto(deg: int) -> list[int]:
    # phi(n) >= sqrt(n/2), so n <= 2 deg^2 suffices
    from .arith import euler_phi
    return [n for n in range(1, 2 * deg * deg + 3) if euler_phi(n) <= deg]


def strip_cyclotomic(f: list[int]) -> tuple[list[int], list[int]]:
    """Divide out every cyclotomic factor; return (remaining, orders found)."""
    found = []
    f = list(f)
    for n in _totient_preimages_upto(max(1, len(f) - 1)):
        phi = cyclotomic(n)
        while len(f) - 1 >= len(phi) - 1:
            q, r = pdivmod(f, list(phi))
            if r:
                break
            f = [int(c) for c in q]
            found.append(n)
    return f, found


def is_kronecker(f: IntPolynomial) -> bool:
    """True iff f is, up to sign and powers of x, a product of cyclotomic polynomials."""
    cs = list(f.coeffs)
    while cs and cs[0] == 0:
        cs.pop(0)
    if not cs or abs(cs[-1]) != 1 or abs(cs[0]) != 1:
        return False
    rest, _ = strip_cyclotomic(cs)
    return len(rest) == 1


# ---------------------------------------------------------------------------
# Mahler measure
# ---------------------------------------------------------------------------

def _mahler_squarefree(cs: list[int], target_width: Fraction, prec: int) -> RealEnclosure:
    """M of a squarefree integer polynomial with nonzero constant term."""
    if len(cs) == 2:
        return RealEnclosure.exact(max(abs(cs[0]), abs(cs[1])))
    if abs(cs[-1]) == 1 and abs(cs[0]) == 1:
        rest, _ = strip_cyclotomic(cs)
        if len(rest) <= 2:
            return RealEnclosure.exact(max(abs(c) for c in rest))
        cs = rest
    n = len(cs) - 1
    lead = abs(cs[-1])
    # |roots| <= 1 + max|a_i/a_n|, so M <= lead * bound^n
    bound_bits = n * (max(abs(c) for c in cs).bit_length() + 1) + lead.bit_length()
    width = Fraction(target_width) / (n << bound_bits)
    width = min(width, Fraction(1, 1 << 40))
    while True:
        bits = width.denominator.bit_length() - width.numerator.bit_length()
        roots = _roots_cached(tuple(cs), width)
        mods = [e.modulus(max(prec, bits + 64)) for e in roots]
        if all(m.lower > 1 for m in mods):
            return RealEnclosure.exact(abs(cs[0]))
        if all(m.upper < 1 for m in mods):
            return RealEnclosure.exact(lead)
        total = RealEnclosure.exact(lead)
        for m in mods:
            total = total * RealEnclosure(max(Fraction(1), m.lower), max(Fraction(1), m.upper))
        if total.width <= target_width:
            return total
        if bits > MAX_PREC:
            raise RootIsolationError("Mahler measure enclosure did not converge")
        width /= 1 << 32


def mahler_measure(f: IntPolynomial, target_width: Fraction = DEFAULT_TARGET_WIDTH) -> RealEnclosure:
    """Enclosure of |lead f| * prod max(1, |root|), exact when provable.

    Exactness is symbolic: cyclotomic factors are divided out (Kronecker), and
    the remaining part is exact when all its roots lie strictly on one side of
    the unit circle.
    """
    if f.is_zero():
        raise ValueError("Mahler measure of the zero polynomial")
    from .factor import squarefree_decomposition_z

    c = abs(content(f.coeffs))
    cs = primitive_int(f.coeffs)
    while cs and cs[0] == 0:
        cs.pop(0)
    total = RealEnclosure.exact(c)
    if len(cs) == 1:
        return total
    parts = squarefree_decomposition_z(cs)
    budget = Fraction(target_width) / (4 * len(cs))
    for g, e in parts:
        # scale the budget so the product of powers stays within target_width
        m = _mahler_squarefree(g, budget / (e * (1 << (e * 8))), 256)
        for _ in range(e):
            total = total * m
    return total


def log_mahler_measure(f: IntPolynomial, target_width: Fraction = DEFAULT_TARGET_WIDTH) -> RealEnclosure:
    m = mahler_measure(f, target_width)
    return r_log(m, 64 + 2 * target_width.denominator.bit_length())


def mahler_from_roots(lead: int, roots: list[ComplexEnclosure], prec: int = 256) -> RealEnclosure:
    total = RealEnclosure.exact(abs(lead))
    for e in roots:
        m = e.modulus(prec)
        total = total * RealEnclosure(max(Fraction(1), m.lower), max(Fraction(1), m.upper))
    return total


def unit_sqrt(x: Fraction, prec: int = 256) -> RealEnclosure:
    return r_sqrt(RealEnclosure.exact(x), prec)
