"""Primes in arithmetic progressions.

Counting is done with a segmented numpy sieve (2^20-wide segments) and checked
against per-number Miller-Rabin where asked.  psi(x; q, a) is kept exactly as
log N for an explicit integer N, so the pi/psi inequalities reduce to integer
comparisons of the shape x^A <= N^2.
"""

from __future__ import annotations

import csv
import io
import logging
import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator

import numpy as np

from .exactalg.arith import euler_phi, is_prime, primality
from .exactalg.intervals import RealEnclosure, _coerce, r_log, r_max

log = logging.getLogger(__name__)

SEGMENT = 1 << 20
SMALL_X = 10_000

__all__ = [
    "APSpec", "LinnikParameters", "ScanRow", "ScanResult", "euler_phi", "primes_upto",
    "pi_qa", "pi_qa_direct", "psi_qa", "check_pi_psi_sandwich", "least_prime_in_ap_above",
    "prime_in_interval_ap", "ScaledSqrt", "evaluate_L_U", "evaluate_nu", "evaluate_eta",
    "linnik_exponent_scan",
]


@dataclass(frozen=True)
class APSpec:
    q: int
    a: int

    def __post_init__(self):
        if self.q < 1:
            raise ValueError("modulus must be >= 1")
        if math.gcd(self.a, self.q) != 1:
            raise ValueError(f"residue {self.a} is not coprime to {self.q}")
        object.__setattr__(self, "a", self.a % self.q)

    def contains(self, n: int) -> bool:
        return n % self.q == self.a


# --- sieve --------------------------------------------------------------------

def _base_primes(n: int) -> np.ndarray:
    if n < 2:
        return np.zeros(0, dtype=np.int64)
    s = np.ones(n + 1, dtype=bool)
    s[:2] = False
    for p in range(2, math.isqrt(n) + 1):
        if s[p]:
            s[p * p::p] = False
    return np.nonzero(s)[0].astype(np.int64)


def _segments(x: int) -> Iterator[np.ndarray]:
    """Primes <= x in increasing order, one numpy array per segment."""
    if x < 2:
        return
    base = _base_primes(math.isqrt(x))
    lo = 0
    while lo <= x:
        hi = min(lo + SEGMENT, x + 1)
        seg = np.ones(hi - lo, dtype=bool)
        if lo == 0:
            seg[: min(2, hi)] = False
        for p in base:
            p = int(p)
            if p * p >= hi:
                break
            start = max(p * p, ((lo + p - 1) // p) * p)
            seg[start - lo::p] = False
        yield np.nonzero(seg)[0].astype(np.int64) + lo
        lo = hi


def primes_upto(x: int) -> np.ndarray:
    parts = list(_segments(int(x)))
    return np.concatenate(parts) if parts else np.zeros(0, dtype=np.int64)


def _floor(x) -> int:
    if isinstance(x, RealEnclosure):
        if math.floor(x.lower) != math.floor(x.upper):
            raise ArithmeticError("floor of the enclosure is not determined")
        return math.floor(x.lower)
    return math.floor(Fraction(x))


def pi_qa(x, spec: APSpec) -> int:
    """Number of primes p <= x with p = a mod q."""
    n = _floor(x)
    if n < 2:
        return 0
    if n <= SMALL_X:
        return pi_qa_direct(n, spec)
    total = 0
    for seg in _segments(n):
        total += int(np.count_nonzero(seg % spec.q == spec.a))
    return total


def pi_qa_direct(x, spec: APSpec) -> int:
    """Same count by testing every member of the progression."""
    n = _floor(x)
    count = 0
    start = spec.a if spec.a >= 2 else spec.a + spec.q
    for m in range(start, n + 1, spec.q):
        if is_prime(m):
            count += 1
    return count


# --- psi -----------------------------------------------------------------------

@dataclass(frozen=True)
class PsiValue:
    """psi(x; q, a) = log N with N = prod p^e_p."""

    exponents: tuple[tuple[int, int], ...]

    def product(self) -> int:
        return _tree_product([p ** e for p, e in self.exponents])

    def log_enclosure(self, bits: int = 256) -> RealEnclosure:
        N = self.product()
        if N <= 1:
            return RealEnclosure.exact(0)
        s = max(N.bit_length() - bits, 0)
        m = N >> s
        lo = r_log(RealEnclosure.exact(m), bits + 64)
        hi = r_log(RealEnclosure.exact(m + (1 if s else 0)), bits + 64)
        shift = r_log(RealEnclosure.exact(2), bits + 64) * s
        return RealEnclosure(lo.lower + shift.lower, hi.upper + shift.upper)


def _tree_product(xs: list[int]) -> int:
    if not xs:
        return 1
    while len(xs) > 1:
        xs = [xs[i] * xs[i + 1] if i + 1 < len(xs) else xs[i] for i in range(0, len(xs), 2)]
    return xs[0]


def _psi_lambda_sum(n: int, spec: APSpec, primes: np.ndarray) -> dict[int, int]:
    """Direct sum of Lambda(m) over m <= n in the progression: count prime powers."""
    out: dict[int, int] = {}
    for p in primes:
        p = int(p)
        pk = p
        while pk <= n:
            if pk % spec.q == spec.a:
                out[p] = out.get(p, 0) + 1
            pk *= p
    return out


def _psi_prime_power_form(n: int, spec: APSpec, primes: np.ndarray) -> dict[int, int]:
    """Sum over primes of floor(log n / log p) log p restricted to the progression.

    The number of k <= floor(log n/log p) with p^k = a (mod q) is computed from
    the multiplicative order of p mod q, without forming the powers.
    """
    out: dict[int, int] = {}
    q, a = spec.q, spec.a
    for p in primes:
        p = int(p)
        K = _ilog(n, p)
        if q == 1:
            out[p] = K
            continue
        if p % q == 0:
            continue
        # powers p^k mod q are periodic with period ord_q(p)
        r = p % q
        cur, k, hits = r, 1, []
        while True:
            if cur == a:
                hits.append(k)
            cur = cur * r % q
            k += 1
            if cur == r:
                break
        period = k - 1
        cnt = sum((K - h) // period + 1 for h in hits if h <= K)
        if cnt:
            out[p] = cnt
    return out


def _ilog(n: int, p: int) -> int:
    """floor(log n / log p) for n >= 1, exactly."""
    k, pk = 0, p
    while pk <= n:
        k += 1
        pk *= p
    return k


def psi_qa(x, spec: APSpec) -> PsiValue:
    n = _floor(x)
    if n < 2:
        return PsiValue(())
    primes = primes_upto(n)
    if spec.q > 1:
        primes = primes[np.gcd(primes, spec.q) == 1]
    first = _psi_lambda_sum(n, spec, primes)
    second = _psi_prime_power_form(n, spec, primes)
    if first != second:
        raise ArithmeticError(f"psi({n}; {spec.q}, {spec.a}) computations disagree")
    return PsiValue(tuple(sorted(first.items())))


@dataclass(frozen=True)
class SandwichReport:
    x: Fraction
    q: int
    a: int
    pi_x: int
    pi_sqrt_x: int
    psi: RealEnclosure
    lower_bound: RealEnclosure
    upper_bound: RealEnclosure
    lower_ok: bool
    upper_ok: bool
    # prime powers p^k = a (mod q) may come from primes p outside the class, so the
    # bound that always holds counts every prime up to sqrt x
    pi_sqrt_x_all: int = 0
    upper_bound_all: RealEnclosure | None = None
    upper_ok_all: bool = True

    @property
    def passed(self) -> bool:
        return self.lower_ok and self.upper_ok

    @property
    def slack(self) -> tuple[float, float]:
        return float(self.psi.lower - self.lower_bound.upper), float(self.upper_bound.lower - self.psi.upper)


def _pi_sqrt(x: Fraction, spec: APSpec) -> int:
    # primes p with p^2 <= x
    r = math.isqrt(math.floor(x))
    return pi_qa(r, spec)


def check_pi_psi_sandwich(x, spec: APSpec) -> SandwichReport:
    """(1/2) log x (pi(x) - pi(sqrt x)) <= psi(x) <= log x (pi(x) + pi(sqrt x)), exactly."""
    x = Fraction(x)
    if x < 2:
        raise ValueError("x must be >= 2")
    pix = pi_qa(x, spec)
    pis = _pi_sqrt(x, spec)
    psi = psi_qa(x, spec)
    N = psi.product()
    A, B = pix - pis, pix + pis
    u, v = x.numerator, x.denominator
    # (A/2) log x <= log N  <=>  x^A <= N^2 ;  log N <= B log x  <=>  N v^B <= u^B
    lower_ok = u ** A <= N * N * v ** A if A >= 0 else True
    upper_ok = N * v ** B <= u ** B
    pis_all = len(primes_upto(math.isqrt(math.floor(x))))
    B_all = pix + pis_all
    upper_ok_all = N * v ** B_all <= u ** B_all
    logx = r_log(RealEnclosure.exact(x))
    return SandwichReport(x, spec.q, spec.a, pix, pis, psi.log_enclosure(),
                          logx * Fraction(A, 2), logx * B, lower_ok, upper_ok,
                          pis_all, logx * B_all, upper_ok_all)


# --- least primes ----------------------------------------------------------

def least_prime_in_ap_above(spec: APSpec, x) -> int:
    """Smallest prime p > x with p = a (mod q)."""
    n = _floor(x) + 1
    r = (spec.a - n) % spec.q
    m = n + r
    while True:
        if m >= 2 and is_prime(m):
            return m
        m += spec.q


@dataclass(frozen=True)
class ScaledSqrt:
    """coeff * sqrt(radicand), compared exactly with integers."""

    coeff: Fraction
    radicand: Fraction

    def lt_int(self, n: int) -> bool:
        # coeff*sqrt(r) < n, coeff >= 0
        return n > 0 and self.coeff ** 2 * self.radicand < n * n

    def le_int(self, n: int) -> bool:
        return n >= 0 and self.coeff ** 2 * self.radicand <= n * n

    def floor(self) -> int:
        v = self.coeff ** 2 * self.radicand
        k = math.isqrt(math.floor(v))
        while (k + 1) ** 2 <= v:
            k += 1
        return k

    def __float__(self):
        return float(self.coeff) * math.sqrt(float(self.radicand))


def _as_bound(x) -> ScaledSqrt | None:
    if isinstance(x, ScaledSqrt):
        return x
    x = Fraction(x)
    return ScaledSqrt(Fraction(1), x * x) if x >= 0 else None


def prime_in_interval_ap(x, y, spec: APSpec, residues: Iterable[int] | None = None) -> int | None:
    """Least prime p in (x, y] with p = a (mod q), or p mod q in residues if given."""
    xb, yb = _as_bound(x), _as_bound(y)
    lo = xb.floor() if xb is not None else _floor(x)
    hi = yb.floor() if yb is not None else _floor(y)
    allowed = {r % spec.q for r in residues} if residues is not None else {spec.a}
    for p in range(max(lo + 1, 2), hi + 1):
        if p % spec.q in allowed and is_prime(p):
            if xb is not None and not xb.lt_int(p):
                continue
            return p
    return None


# --- Linnik evaluators --------------------------------------------------------

@dataclass(frozen=True)
class LinnikParameters:
    c: Fraction
    c1: Fraction
    c2: Fraction
    c3: Fraction
    U: Fraction
    delta1: object = None
    q: object = None

    def __post_init__(self):
        for name in ("c", "c1", "c2", "c3", "U"):
            v = getattr(self, name)
            if not isinstance(v, RealEnclosure):
                object.__setattr__(self, name, Fraction(v))
        c, c1, c2, c3 = (_coerce(getattr(self, k)) for k in ("c", "c1", "c2", "c3"))
        if not (c2 > 1 and c1.upper < 1 and c1.lower > 0 and c3.lower > 0):
            raise ValueError("need c2 > 1 > c1 > 0 and c3 > 0")
        if c.lower < 1:
            raise ValueError("need c >= 1")
        if not c > 1:
            log.info("c = 1 is at the boundary of the stated range c > 1")

    @property
    def log_2Uc(self) -> RealEnclosure:
        return r_log(_coerce(self.U) * 2 * _coerce(self.c))


def evaluate_L_U(params: LinnikParameters, gamma=None) -> RealEnclosure:
    """max{4c2, 4/c3, 4 log(2Uc)/c1, 4 log(2Uc)/(c3 |log c1|)}."""
    if gamma is not None:
        g = Fraction(gamma)
        if not Fraction(params.U) > 3 * (g + 3) / (g - 3):
            log.warning("U <= 3(gamma+3)/(gamma-3): the interval statement does not apply")
    c1, c2, c3 = (_coerce(v) for v in (params.c1, params.c2, params.c3))
    L = params.log_2Uc
    abs_log_c1 = -r_log(c1)
    return r_max(c2 * 4, RealEnclosure.exact(4) / c3, L * 4 / c1, L * 4 / (c3 * abs_log_c1))


def evaluate_nu(params: LinnikParameters) -> RealEnclosure:
    """max{4c2, 4/c1, 4/c3, 4 log(2Uc)/(c3 |log c1|)}."""
    c1, c2, c3 = (_coerce(v) for v in (params.c1, params.c2, params.c3))
    four = RealEnclosure.exact(4)
    abs_log_c1 = -r_log(c1)
    return r_max(c2 * 4, four / c1, four / c3, params.log_2Uc * 4 / (c3 * abs_log_c1))


def evaluate_eta(params: LinnikParameters) -> RealEnclosure:
    """c1/(2 log q) without an exceptional zero, c3 |log(2 delta1 log q)|/(2 log q) with one."""
    if params.q is None:
        raise ValueError("eta needs the modulus q")
    q = _coerce(params.q)
    if not q > 1:
        raise ValueError("eta needs q > 1")
    logq = r_log(q)
    if params.delta1 is None:
        return _coerce(params.c1) / (logq * 2)
    inner = r_log(_coerce(params.delta1) * logq * 2)
    if inner.upper < 0:
        inner = -inner
    elif inner.lower < 0:
        inner = RealEnclosure(Fraction(0), max(-inner.lower, inner.upper))
    return _coerce(params.c3) * inner / (logq * 2)


# --- scans --------------------------------------------------------------------

@dataclass(frozen=True)
class ScanRow:
    q: int
    least_prime: int
    ratio: RealEnclosure
    probable: bool
    millis: float


@dataclass
class ScanResult:
    rows: list[ScanRow] = field(default_factory=list)

    @property
    def max_ratio(self) -> ScanRow | None:
        return max(self.rows, key=lambda r: r.ratio.mid, default=None)

    def to_csv(self, timings: bool = True) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["q", "least_prime", "ratio", "probable_flag", "millis"])
        for r in self.rows:
            w.writerow([r.q, r.least_prime, r.ratio.decimal(12), int(r.probable),
                        f"{r.millis:.3f}" if timings else "0"])
        return buf.getvalue()


def linnik_exponent_scan(q_max: int, q_min: int = 3) -> ScanResult:
    """Least prime P(q, 1) = 1 (mod q) and log P / log q for q_min <= q <= q_max."""
    if q_max < 3:
        raise ValueError("q_max must be >= 3")
    out = ScanResult()
    for q in range(max(q_min, 3), q_max + 1):
        t = time.perf_counter()
        p = least_prime_in_ap_above(APSpec(q, 1), 1)
        ratio = r_log(RealEnclosure.exact(p), 128) / r_log(RealEnclosure.exact(q), 128)
        out.rows.append(ScanRow(q, p, ratio, primality(p)[1], (time.perf_counter() - t) * 1000))
    return out
