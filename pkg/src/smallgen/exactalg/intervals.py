"""Rigorous real and complex enclosures with dyadic-rational endpoints.

Transcendental operations go through ``mpmath.iv`` (outward rounded interval
arithmetic) and are converted back to exact ``Fraction`` endpoints, so every
stored endpoint is an exact dyadic rational.
"""

from __future__ import annotations

import math
from contextlib import contextmanager
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

import mpmath
from mpmath import iv

Number = Union[int, Fraction]

DEFAULT_TARGET_WIDTH = Fraction(1, 1 << 80)


def mpf_to_fraction(x) -> Fraction:
    """Exact value of an mpmath mpf or raw mpf tuple (always a dyadic rational)."""
    if isinstance(x, tuple):
        raw = x
    else:
        if not isinstance(x, mpmath.mpf):
            x = mpmath.mpf(x)
        raw = x._mpf_
    if raw in (mpmath.libmp.finf, mpmath.libmp.fninf, mpmath.libmp.fnan):
        raise ValueError("non-finite value in enclosure")
    sign, man, exp, _ = raw
    if not man:
        return Fraction(0)
    man = -int(man) if sign else int(man)
    exp = int(exp)
    if exp >= 0:
        return Fraction(man << exp)
    return Fraction(man, 1 << -exp)


def _iv_from_fraction(q: Fraction):
    q = Fraction(q)
    if q.denominator == 1:
        return iv.mpf(q.numerator)
    return iv.mpf(q.numerator) / iv.mpf(q.denominator)


@dataclass(frozen=True)
class RealEnclosure:
    """Closed interval [lower, upper] known to contain a real number."""

    lower: Fraction
    upper: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lower", Fraction(self.lower))
        object.__setattr__(self, "upper", Fraction(self.upper))
        if self.lower > self.upper:
            raise ValueError("empty enclosure")

    @classmethod
    def exact(cls, x: Number) -> "RealEnclosure":
        return cls(Fraction(x), Fraction(x))

    @classmethod
    def from_iv(cls, v) -> "RealEnclosure":
        lo, hi = v._mpi_        # raw endpoints; going through mpf would round to 53 bits
        return cls(mpf_to_fraction(lo), mpf_to_fraction(hi))

    def to_iv(self):
        lo = _iv_from_fraction(self.lower)
        hi = _iv_from_fraction(self.upper)
        return iv.mpf([lo.a, hi.b])

    @property
    def width(self) -> Fraction:
        return self.upper - self.lower

    @property
    def mid(self) -> Fraction:
        return (self.lower + self.upper) / 2

    def is_exact(self) -> bool:
        return self.lower == self.upper

    def contains(self, x) -> bool:
        if isinstance(x, RealEnclosure):
            return self.lower <= x.lower and x.upper <= self.upper
        return self.lower <= Fraction(x) <= self.upper

    def overlaps(self, other: "RealEnclosure") -> bool:
        return not (self.upper < other.lower or other.upper < self.lower)

    def __lt__(self, other):
        # certainly less
        other = _coerce(other)
        return self.upper < other.lower

    def __gt__(self, other):
        other = _coerce(other)
        return self.lower > other.upper

    def __add__(self, other):
        other = _coerce(other)
        return RealEnclosure(self.lower + other.lower, self.upper + other.upper)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        return RealEnclosure(self.lower - other.upper, self.upper - other.lower)

    def __rsub__(self, other):
        return _coerce(other) - self

    def __neg__(self):
        return RealEnclosure(-self.upper, -self.lower)

    def __mul__(self, other):
        other = _coerce(other)
        prods = [self.lower * other.lower, self.lower * other.upper,
                 self.upper * other.lower, self.upper * other.upper]
        return RealEnclosure(min(prods), max(prods))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other.lower <= 0 <= other.upper:
            raise ZeroDivisionError("enclosure divisor contains zero")
        return self * RealEnclosure(1 / other.upper, 1 / other.lower)

    def decimal(self, digits: int = 20) -> str:
        with mpmath.workdps(digits + 10):
            return mpmath.nstr(mpmath.mpf(self.mid.numerator) / self.mid.denominator, digits)

    def error_bound(self) -> Fraction:
        return self.width / 2

    def __float__(self):
        return float(self.mid)

    def __repr__(self):
        return f"RealEnclosure([{float(self.lower)!r}, {float(self.upper)!r}])"


def _coerce(x) -> RealEnclosure:
    if isinstance(x, RealEnclosure):
        return x
    return RealEnclosure.exact(Fraction(x))


@contextmanager
def iv_prec(prec: int):
    saved = iv.prec
    iv.prec = prec
    try:
        yield
    finally:
        iv.prec = saved


def _apply(fn, x: RealEnclosure, prec: int) -> RealEnclosure:
    with iv_prec(prec):
        return RealEnclosure.from_iv(fn(x.to_iv()))


def r_log(x, prec: int = 256) -> RealEnclosure:
    x = _coerce(x)
    if x.lower <= 0:
        raise ValueError("log of non-positive enclosure")
    if x.is_exact() and x.lower == 1:
        return RealEnclosure.exact(0)
    return _apply(iv.log, x, prec)


def r_exp(x, prec: int = 256) -> RealEnclosure:
    x = _coerce(x)
    if x.is_exact() and x.lower == 0:
        return RealEnclosure.exact(1)
    return _apply(iv.exp, x, prec)


def r_sqrt(x, prec: int = 256) -> RealEnclosure:
    x = _coerce(x)
    if x.lower < 0:
        raise ValueError("sqrt of negative enclosure")
    if x.is_exact():
        q = x.lower
        rn, rd = math.isqrt(q.numerator), math.isqrt(q.denominator)
        if rn * rn == q.numerator and rd * rd == q.denominator:
            return RealEnclosure.exact(Fraction(rn, rd))
    return _apply(iv.sqrt, x, prec)


def r_pow(base, exponent, prec: int = 256) -> RealEnclosure:
    """base**exponent for base > 0 (exponent rational or enclosure)."""
    base = _coerce(base)
    exponent = _coerce(exponent)
    if exponent.is_exact() and exponent.lower.denominator == 1 and exponent.lower >= 0:
        e = int(exponent.lower)
        out = RealEnclosure.exact(1)
        for _ in range(e):
            out = out * base
        return out
    return r_exp(r_log(base, prec) * exponent, prec)


def r_max(*xs) -> RealEnclosure:
    xs = [_coerce(x) for x in xs]
    return RealEnclosure(max(x.lower for x in xs), max(x.upper for x in xs))


def r_min(*xs) -> RealEnclosure:
    xs = [_coerce(x) for x in xs]
    return RealEnclosure(min(x.lower for x in xs), min(x.upper for x in xs))


def round_out(x: RealEnclosure, bits: int) -> RealEnclosure:
    """Widen endpoints outward to dyadics with denominator 2**bits (keeps sizes small)."""
    scale = 1 << bits
    lo = Fraction(math.floor(x.lower * scale), scale)
    hi = Fraction(math.ceil(x.upper * scale), scale)
    return RealEnclosure(lo, hi)


@dataclass(frozen=True)
class ComplexEnclosure:
    """Certified disc around a root, exposed as a box."""

    center_re: Fraction
    center_im: Fraction
    radius: Fraction
    precision: int

    @property
    def real_part(self) -> RealEnclosure:
        return RealEnclosure(self.center_re - self.radius, self.center_re + self.radius)

    @property
    def imag_part(self) -> RealEnclosure:
        if self.center_im == 0:
            return RealEnclosure.exact(0)
        return RealEnclosure(self.center_im - self.radius, self.center_im + self.radius)

    @property
    def width(self) -> Fraction:
        return 2 * self.radius

    def is_real(self) -> bool:
        return self.center_im == 0

    def modulus(self, prec: int = 256) -> RealEnclosure:
        sq = self.center_re ** 2 + self.center_im ** 2
        m = r_sqrt(RealEnclosure.exact(sq), prec)
        lo = max(Fraction(0), m.lower - self.radius)
        return RealEnclosure(lo, m.upper + self.radius)

    def contains_point(self, re: Fraction, im: Fraction) -> bool:
        return (re - self.center_re) ** 2 + (im - self.center_im) ** 2 <= self.radius ** 2

    def as_complex(self) -> complex:
        return complex(float(self.center_re), float(self.center_im))

    def __repr__(self):
        return (f"ComplexEnclosure({float(self.center_re)!r}"
                f"{float(self.center_im):+}j, r={float(self.radius):.3g})")
