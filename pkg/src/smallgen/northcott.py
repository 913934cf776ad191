"""Enumeration of algebraic numbers of bounded height.

Northcott's theorem makes the set {alpha : deg alpha = d, H(alpha) <= B}
finite; here it is made constructive through the Landau bound
|a_i| <= binom(d, i) M(f) on the coefficients of the minimal polynomial.
That gives delta(K) = min{H(alpha) : K = Q(alpha)} with a certificate that the
whole coefficient box below the minimizer's height was scanned.
"""

from __future__ import annotations

import itertools
import logging
import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Iterator

import numpy as np

from .exactalg.arith import is_square
from .exactalg.factor import is_irreducible
from .exactalg.finite_field import count_roots_mod_p
from .exactalg.intervals import RealEnclosure, r_exp, r_log
from .exactalg.polynomial import IntPolynomial, content, poly_discriminant
from .heights import (
    LogHeight,
    Ordering,
    compare,
    compare_mahler_to,
    height_algebraic,
    symmetry_class,
)
from .numfield.field import NumberField
from .numfield.trager import fields_isomorphic, minpoly_of_combination

log = logging.getLogger(__name__)

START_B = Fraction(5, 4)
SIEVE_PRIMES = (3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)


@dataclass(frozen=True)
class EnumerationBudget:
    max_candidates: int = 20_000_000
    max_seconds: float = 600.0
    max_B: float = 1e6

    def __post_init__(self):
        if self.max_candidates <= 0 or self.max_seconds <= 0 or self.max_B <= 0:
            raise ValueError("budget limits must be positive")


@dataclass
class _Meter:
    budget: EnumerationBudget
    scanned: int = 0
    started: float = field(default_factory=time.monotonic)

    def charge(self, n: int) -> bool:
        """Account for n box points; False once the budget is spent."""
        self.scanned += n
        return self.scanned <= self.budget.max_candidates and \
            time.monotonic() - self.started <= self.budget.max_seconds

    def affordable(self, n: int) -> bool:
        return self.scanned + n <= self.budget.max_candidates and \
            time.monotonic() - self.started <= self.budget.max_seconds

    @property
    def elapsed(self) -> float:
        return time.monotonic() - self.started


@dataclass(frozen=True)
class DeltaCertificate:
    field: NumberField
    bound_B: Fraction
    generator: IntPolynomial
    height: LogHeight
    exhaustive: bool
    candidates_scanned: int
    wall_time: float
    mahler_box: Fraction = Fraction(0)

    @property
    def degree(self) -> int:
        return self.field.degree

    def value(self) -> float:
        return float(self.height)


@dataclass(frozen=True)
class GeneratorSearch:
    generator: IntPolynomial | None
    height: LogHeight | None
    exhaustive: bool
    candidates_scanned: int

    @property
    def found(self) -> bool:
        return self.generator is not None


# --- coefficient boxes ----------------------------------------------------------

def _box_limits(d: int, T: Fraction) -> list[int]:
    """Per-coefficient bounds floor(binom(d, i) * T), constant term first."""
    return [math.floor(comb(d, i) * T) for i in range(d + 1)]


def _box_size(limits: list[int]) -> int:
    n = limits[-1]
    for c in limits[:-1]:
        n *= 2 * c + 1
    return n


def _mahler_bound(B) -> tuple[Fraction | None, LogHeight | None]:
    if isinstance(B, LogHeight):
        return None, B
    return Fraction(B), None


def _within(h: LogHeight, T: Fraction | None, bound: LogHeight | None) -> bool:
    if bound is not None:
        return compare(h, bound) is not Ordering.GREATER
    return compare_mahler_to(h, T) is not Ordering.GREATER


def _upper_T(d: int, bound: LogHeight) -> Fraction:
    """Rational upper bound for H^d."""
    enc = r_exp(bound.log_value * d)
    return enc.upper


def enumerate_candidates(d: int, B) -> Iterator[IntPolynomial]:
    """Every irreducible primitive f of degree d, lead > 0, with M(f) <= B^d.

    B is a rational number or a LogHeight (then M(f) <= H^d is decided with
    exact comparisons).  Output is lexicographic in (a_d, ..., a_0).
    """
    if d < 1:
        raise ValueError("degree must be >= 1")
    T, bound = _mahler_bound(B)
    if bound is not None:
        if bound.log_value.upper < 0:
            raise ValueError("height bound must be >= 1")
        box_T = _upper_T(d, bound)
    else:
        if T < 1:
            raise ValueError("height bound must be >= 1")
        T = T ** d
        box_T = T
    limits = _box_limits(d, box_T)
    ranges = [range(1, limits[d] + 1)] + [range(-limits[i], limits[i] + 1) for i in range(d - 1, -1, -1)]
    for high in itertools.product(*ranges):
        coeffs = high[::-1]
        if d >= 2 and coeffs[0] == 0:
            continue
        if content(coeffs) != 1:
            continue
        f = IntPolynomial(coeffs)
        if d >= 2 and not is_irreducible(f):
            continue
        h = height_algebraic(f)
        if _within(h, T, bound):
            yield f


# --- field membership filters ------------------------------------------------

class _FieldMatcher:
    """Decides whether an irreducible f of degree d defines K."""

    def __init__(self, K: NumberField):
        self.K = K
        self.g = K.defining_poly
        self.disc_g = poly_discriminant(self.g)
        self.root_counts = {}
        for p in SIEVE_PRIMES:
            if self.disc_g % p:
                self.root_counts[p] = count_roots_mod_p(self.g.coeffs, p)

    def matches(self, f: IntPolynomial) -> bool:
        df = poly_discriminant(f)
        if df == 0 or not is_square(df * self.disc_g):
            return False
        if self.K.degree == 2:
            return True
        lead = f.lead
        for p, cnt in self.root_counts.items():
            if df % p and lead % p:
                if count_roots_mod_p(f.coeffs, p) != cnt:
                    return False
        if not is_irreducible(f):
            return False
        return fields_isomorphic(f, self.g)


def _quadratic_hits(K: NumberField, T: Fraction, meter: _Meter) -> tuple[list[IntPolynomial], bool]:
    """Canonical quadratics in the box for T whose discriminant class matches K."""
    c0, c1, c2 = _box_limits(2, T)
    disc_g = poly_discriminant(K.defining_poly)
    a1 = np.arange(0, c1 + 1, dtype=np.int64)          # x -> -x symmetry: a1 >= 0
    a0 = np.arange(-c0, c0 + 1, dtype=np.int64)
    A1, A0 = np.meshgrid(a1, a0, indexing="ij")
    out = []
    for a2 in range(1, c2 + 1):
        if not meter.charge(A1.size):
            return out, False
        # reversal symmetry: a2 <= |a0|
        D = A1 * A1 - 4 * a2 * A0
        prod = D * disc_g
        ok = (prod > 0) & (np.abs(A0) >= a2)
        if not ok.any():
            continue
        r = np.rint(np.sqrt(np.where(ok, prod, 0).astype(np.float64))).astype(np.int64)
        ok &= r * r == prod
        for i, j in zip(*np.nonzero(ok)):
            coeffs = (int(A0[i, j]), int(A1[i, j]), a2)
            if math.gcd(math.gcd(coeffs[0], coeffs[1]), a2) != 1:
                continue
            if not is_square(poly_discriminant(IntPolynomial(coeffs)) * disc_g):
                continue  # float rounding guard
            out.append(IntPolynomial(coeffs))
    return out, True


def _generic_hits(K: NumberField, T: Fraction, meter: _Meter) -> tuple[list[IntPolynomial], bool]:
    d = K.degree
    limits = _box_limits(d, T)
    matcher = _FieldMatcher(K)
    out = []
    inner = [range(0, limits[d - 1] + 1)] + \
        [range(-limits[i], limits[i] + 1) for i in range(d - 2, 0, -1)]
    inner_size = 1
    for r in inner:
        inner_size *= len(r)
    for lead in range(1, limits[d] + 1):          # leading-coefficient strata
        for a0 in itertools.chain(range(-limits[0], -lead + 1), range(lead, limits[0] + 1)):
            if not meter.charge(inner_size):
                return out, False
            for mid in itertools.product(*inner):
                coeffs = (a0,) + mid[::-1] + (lead,)
                if content(coeffs) != 1:
                    continue
                f = IntPolynomial(coeffs)
                if matcher.matches(f):
                    out.append(f)
    return out, True


def _scan(K: NumberField, T: Fraction, meter: _Meter):
    if K.degree == 1:
        return [], True
    if K.degree == 2:
        return _quadratic_hits(K, T, meter)
    return _generic_hits(K, T, meter)


def _reduce_min(polys: list[IntPolynomial]) -> tuple[IntPolynomial, LogHeight] | None:
    """Deterministic min over (height, canonical coefficient tuple)."""
    best = None
    seen = set()
    for f in polys:
        key = symmetry_class(f)
        if key in seen:
            continue
        seen.add(key)
        h = height_algebraic(f)
        if best is None:
            best = (key, h)
            continue
        o = compare(h, best[1])
        if o is Ordering.LESS or (o is Ordering.EQUAL and key < best[0]):
            best = (key, h)
    if best is None:
        return None
    canon = IntPolynomial(best[0][::-1])
    return canon, height_algebraic(canon)


def _grow(B: Fraction) -> Fraction:
    # ratio sqrt(2), rounded up to a rational so boxes only grow
    nxt = B * Fraction(math.isqrt(2 * 10**12) + 1, 10**6)
    return Fraction(math.ceil(nxt * 1024), 1024)


# --- delta ------------------------------------------------------------------

def _rational_field_certificate(K, meter):
    one = height_algebraic(IntPolynomial([0, 1]))
    return DeltaCertificate(K, Fraction(1), IntPolynomial([0, 1]), one, True, 0, meter.elapsed, Fraction(1))


def delta(K: NumberField, budget: EnumerationBudget | None = None, start_B: Fraction = START_B) -> DeltaCertificate:
    """delta(K/Q) with an exhaustiveness certificate.

    The height bound B grows by sqrt(2) until the box contains a generator of
    K.  The best generator h found then fixes the final box |a_i| <=
    binom(d, i) M(h), which by the Landau bound contains every generator of
    height <= H(h); that box is re-scanned and its minimum is delta.
    """
    budget = budget or EnumerationBudget()
    meter = _Meter(budget)
    d = K.degree
    if d == 1:
        return _rational_field_certificate(K, meter)
    B = Fraction(start_B)
    best = None
    while best is None:
        if B > budget.max_B:
            break
        hits, complete = _scan(K, B ** d, meter)
        best = _reduce_min(hits)
        if not complete:
            break
        if best is None:
            B = _grow(B)
    if best is None:
        g = K.defining_poly
        log.info("delta search for %s exhausted its budget without a hit", K)
        return DeltaCertificate(K, B, g, height_algebraic(g), False, meter.scanned, meter.elapsed)
    T = math.ceil(best[1].mahler.upper * 2**20) / Fraction(2**20)
    hits, complete = _scan(K, T, meter)
    final = _reduce_min(hits + [best[0]])
    return DeltaCertificate(K, B, final[0], final[1], complete and best is not None,
                            meter.scanned, meter.elapsed, T)


def find_generator_below(K: NumberField, bound: LogHeight,
                         budget: EnumerationBudget | None = None) -> GeneratorSearch:
    """Some generator of K with H <= bound (the smallest in the first box that has one)."""
    if bound.log_value.upper < 0:
        raise ValueError("bound must be >= 1")
    budget = budget or EnumerationBudget()
    meter = _Meter(budget)
    d = K.degree
    if d == 1:
        one = height_algebraic(IntPolynomial([0, 1]))
        return GeneratorSearch(IntPolynomial([0, 1]), one, True, 0)
    T_max = _upper_T(d, bound)
    B = START_B
    while True:
        T = min(B ** d, T_max)
        hits, complete = _scan(K, T, meter)
        good = []
        for f in hits:
            if compare(height_algebraic(f), bound) is not Ordering.GREATER:
                good.append(f)
        best = _reduce_min(good)
        if best is not None:
            return GeneratorSearch(best[0], best[1], complete, meter.scanned)
        if not complete:
            return GeneratorSearch(None, None, False, meter.scanned)
        if T >= T_max:
            return GeneratorSearch(None, None, True, meter.scanned)
        B = _grow(B)


# --- integer combinations ----------------------------------------------------

@dataclass(frozen=True)
class Combination:
    a: int
    b: int
    minpoly: IntPolynomial
    height: LogHeight


def best_integer_combination(f_alpha: IntPolynomial, f_beta: IntPolynomial) -> Combination:
    """The pair 0 <= a, b < d minimizing H(a alpha + b beta) among full-degree ones.

    d is the degree of the compositum Q(alpha, beta), found as the largest
    degree occurring among the combinations scanned.
    """
    ha = height_algebraic(f_alpha)
    hb = height_algebraic(f_beta)
    upper = f_alpha.degree * f_beta.degree
    table = {}
    for a in range(upper):
        for b in range(upper):
            if (a, b) == (0, 0):
                continue
            table[(a, b)] = minpoly_of_combination(f_alpha, f_beta, a, b)
    d = max(g.degree for g in table.values())
    best = None
    for (a, b), g in sorted(table.items()):
        if a >= d or b >= d or g.degree != d:
            continue
        h = height_algebraic(g)
        if best is None or compare(h, best.height) is Ordering.LESS:
            best = Combination(a, b, g, h)
    if best is None:
        raise ArithmeticError("no integer combination generates the compositum")
    bound = ha.log_value + hb.log_value + _log_const(2 * d * d)
    if best.height.log_value > bound:
        raise ArithmeticError("combination height exceeds 2 d^2 H(alpha) H(beta)")
    return best


def _log_const(n: int) -> RealEnclosure:
    return r_log(RealEnclosure.exact(n))
