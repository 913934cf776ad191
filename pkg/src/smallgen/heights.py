"""Absolute multiplicative Weil heights, stored in logarithmic form.

For an algebraic number with primitive minimal polynomial f of degree d,
H = M(f)^(1/d).  Heights carry their minimal polynomial and Mahler-measure
enclosure so comparisons can fall back to exact arguments.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .exactalg.factor import is_irreducible
from .exactalg.intervals import DEFAULT_TARGET_WIDTH, RealEnclosure, r_exp, r_log
from .exactalg.polynomial import IntPolynomial
from .exactalg.roots import is_kronecker, mahler_measure
from .numfield.field import FieldElement, minimal_polynomial

MAX_COMPARE_BITS = 256


class Ordering(Enum):
    LESS = "less"
    EQUAL = "equal"
    GREATER = "greater"


class HeightComparisonUndecided(ArithmeticError):
    """Enclosures still overlap at the precision budget and no exact argument applies."""


@dataclass(frozen=True)
class LogHeight:
    log_value: RealEnclosure
    minpoly: IntPolynomial
    mahler: RealEnclosure
    exact_one: bool

    @property
    def degree(self) -> int:
        return self.minpoly.degree

    def height(self, prec: int = 256) -> RealEnclosure:
        return r_exp(self.log_value, prec)

    def mahler_exact(self) -> Fraction | None:
        return self.mahler.lower if self.mahler.is_exact() else None

    def refine(self, width: Fraction) -> "LogHeight":
        return height_algebraic(self.minpoly, width)

    def __float__(self):
        return math.exp(float(self.log_value.mid))

    def decimal(self, digits: int = 15) -> str:
        return self.height().decimal(digits)


def _log_of(m: RealEnclosure, width: Fraction) -> RealEnclosure:
    bits = width.denominator.bit_length() - width.numerator.bit_length() + 64
    return r_log(m, max(bits, 128))


def height_algebraic(f: IntPolynomial, target_width: Fraction = DEFAULT_TARGET_WIDTH) -> LogHeight:
    """Height of a root of the irreducible integer polynomial f."""
    if f.degree < 1:
        raise ValueError("height needs a polynomial of degree >= 1")
    f = f.primitive()
    if f.degree > 1 and not is_irreducible(f):
        raise ValueError(f"{f} is reducible")
    d = f.degree
    m = mahler_measure(f, Fraction(target_width))
    exact_one = m.is_exact() and m.lower == 1
    if exact_one and f.degree > 1 and not is_kronecker(f):
        raise ArithmeticError("Mahler measure 1 without cyclotomic certificate")
    log_m = _log_of(m, Fraction(target_width))
    return LogHeight(log_m * Fraction(1, d), f, m, exact_one)


def height_rational(r) -> LogHeight:
    r = Fraction(r)
    p, q = r.numerator, r.denominator
    f = IntPolynomial([-p, q])
    m = max(abs(p), q)
    mm = RealEnclosure.exact(m)
    return LogHeight(r_log(mm), f, mm, m == 1)


_element_cache: dict = {}
_cache_lock = threading.Lock()


def height_element(alpha: FieldElement) -> LogHeight:
    key = (alpha.field.defining_poly.coeffs, alpha.coords)
    hit = _element_cache.get(key)
    if hit is not None:
        return hit
    if alpha.is_rational():
        h = height_rational(alpha.coords[0])
    else:
        h = height_algebraic(minimal_polynomial(alpha))
    with _cache_lock:
        _element_cache.setdefault(key, h)
    return h


def height_of_root(n: int, value) -> LogHeight:
    """Height of value**(1/n) for a positive rational value, computed through x^n - value."""
    v = Fraction(value)
    f = IntPolynomial([-v.numerator] + [0] * (n - 1) + [v.denominator])
    return height_algebraic(f)


# --- canonical forms ----------------------------------------------------------

def symmetry_class(f: IntPolynomial) -> tuple[int, ...]:
    """Canonical representative of f under f(x) -> f(-x) and reversal.

    These maps correspond to alpha -> -alpha and alpha -> 1/alpha, both of
    which preserve the height.
    """
    f = f.primitive()
    images = [f, f.negate_x().primitive()]
    if f.coeffs and f.coeffs[0] != 0:
        r = f.reversed().primitive()
        images += [r, r.negate_x().primitive()]
    return min(img.coeffs[::-1] for img in images)


# --- exact comparisons ------------------------------------------------------

def _quadratic_surd(f: IntPolynomial):
    """Mahler measure of an irreducible quadratic as (u, v, D) meaning u + v*sqrt(D)."""
    c, b, a = f.coeffs
    A, Bb = abs(a), abs(b)
    D = b * b - 4 * a * c
    if D < 0:
        return Fraction(max(A, abs(c))), Fraction(0), 1
    # real roots; moduli L = (|b| + sqrt D)/(2|a|) >= S = ||b| - sqrt D|/(2|a|)
    # neither can equal 1 since f is irreducible
    larger_gt1 = _sqrt_gt(D, 2 * A - Bb)
    smaller_lt1 = _sqrt_gt(D, Bb - 2 * A) and D < (Bb + 2 * A) ** 2
    if larger_gt1 and smaller_lt1:
        return Fraction(Bb, 2), Fraction(1, 2), D
    if larger_gt1:
        return Fraction(abs(c)), Fraction(0), 1
    return Fraction(A), Fraction(0), 1


def _sqrt_gt(D: int, t: int) -> bool:
    """sqrt(D) > t for integer t."""
    return t < 0 or D > t * t


def _surd_sign(u: Fraction, v1: Fraction, D1: int, v2: Fraction, D2: int) -> int:
    """Sign of u + v1 sqrt(D1) - v2 sqrt(D2) (exact)."""
    # reduce to comparing u + v1 sqrt(D1) with v2 sqrt(D2)
    a_lhs = (u, v1, D1)

    def sign_ab(a: Fraction, b: Fraction, D: int) -> int:
        # sign of a + b sqrt(D)
        if b == 0 or D == 0:
            return (a > 0) - (a < 0)
        sb = 1 if b > 0 else -1
        if a == 0:
            return sb
        sa = 1 if a > 0 else -1
        if sa == sb:
            return sa
        cmp = a * a - b * b * D
        return sa if cmp > 0 else (-sa if cmp < 0 else 0)

    left = sign_ab(*a_lhs)
    right = 1 if v2 > 0 else (-1 if v2 < 0 else 0)
    if right == 0 or D2 == 0:
        return left
    if left != right:
        return left if left != 0 else -right
    # both sides same sign s: compare squares; (u + v1 s1)^2 = u^2 + v1^2 D1 + 2 u v1 sqrt(D1)
    s = left
    diff = sign_ab(u * u + v1 * v1 * D1 - v2 * v2 * D2, 2 * u * v1, D1)
    return s * diff


def _exact_compare(h1: LogHeight, h2: LogHeight) -> Ordering | None:
    d1, d2 = h1.degree, h2.degree
    m1, m2 = h1.mahler_exact(), h2.mahler_exact()
    if m1 is not None and m2 is not None:
        a, b = m1 ** d2, m2 ** d1
        return Ordering.LESS if a < b else (Ordering.GREATER if a > b else Ordering.EQUAL)
    if d1 == 2 and d2 == 2:
        s1, s2 = _quadratic_surd(h1.minpoly), _quadratic_surd(h2.minpoly)
        u = s1[0] - s2[0]
        sign = _surd_sign(u, s1[1], s1[2], s2[1], s2[2])
        return Ordering.LESS if sign < 0 else (Ordering.GREATER if sign > 0 else Ordering.EQUAL)
    return None


def compare(h1: LogHeight, h2: LogHeight) -> Ordering:
    """Decide H1 <, =, > H2 without numerical guessing."""
    if h1.exact_one and h2.exact_one:
        return Ordering.EQUAL
    if symmetry_class(h1.minpoly) == symmetry_class(h2.minpoly):
        return Ordering.EQUAL
    if h1.log_value < h2.log_value:
        return Ordering.LESS
    if h1.log_value > h2.log_value:
        return Ordering.GREATER
    exact = _exact_compare(h1, h2)
    if exact is not None:
        return exact
    for bits in (128, 192, MAX_COMPARE_BITS):
        width = Fraction(1, 1 << bits)
        a, b = h1.refine(width), h2.refine(width)
        if a.log_value < b.log_value:
            return Ordering.LESS
        if a.log_value > b.log_value:
            return Ordering.GREATER
    raise HeightComparisonUndecided(
        f"heights of {h1.minpoly} and {h2.minpoly} agree to 2^-{MAX_COMPARE_BITS}")


def height_le(h: LogHeight, bound: LogHeight) -> bool:
    return compare(h, bound) is not Ordering.GREATER


def compare_mahler_to(h: LogHeight, T) -> Ordering:
    """Compare the Mahler measure of h's minimal polynomial with a rational T."""
    T = Fraction(T)
    m = h.mahler
    if m.upper < T:
        return Ordering.LESS
    if m.lower > T:
        return Ordering.GREATER
    if m.is_exact():
        return Ordering.LESS if m.lower < T else (Ordering.GREATER if m.lower > T else Ordering.EQUAL)
    if h.degree == 2:
        u, v, D = _quadratic_surd(h.minpoly)
        sign = _surd_sign(u - T, v, D, Fraction(0), 1)
        return Ordering.LESS if sign < 0 else (Ordering.GREATER if sign > 0 else Ordering.EQUAL)
    for bits in (128, 192, MAX_COMPARE_BITS):
        m = mahler_measure(h.minpoly, Fraction(1, 1 << bits))
        if m.upper < T:
            return Ordering.LESS
        if m.lower > T:
            return Ordering.GREATER
    raise HeightComparisonUndecided(f"M({h.minpoly}) agrees with {T} to 2^-{MAX_COMPARE_BITS}")
