"""End-to-end checks combining heights, discriminants, splitting and enumeration.

Everything here is "proof-step verification" at desk scale: each report
records which steps were checked exactly and which are only bounded.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .abelian import (
    AbelianSpec,
    defining_polynomial,
    field_conductor,
)
from .exactalg.arith import divisors, is_prime, is_squarefree_int
from .exactalg.intervals import RealEnclosure, r_exp, r_log
from .exactalg.polynomial import IntPolynomial, poly_discriminant
from .heights import LogHeight, Ordering, compare, height_algebraic, height_of_root
from .northcott import (
    DeltaCertificate,
    EnumerationBudget,
    GeneratorSearch,
    best_integer_combination,
    delta,
    find_generator_below,
)
from .numfield.discriminant import DiscriminantResult, field_discriminant
from .numfield.field import NumberField
from .numfield.trager import minpoly_of_combination, monic_model
from .primes import APSpec, ScaledSqrt, prime_in_interval_ap

HOLDS, FAILS, UNDECIDED = "holds", "fails", "undecided"
LABEL = "proof-step verification"


def _log(n) -> RealEnclosure:
    return r_log(RealEnclosure.exact(Fraction(n)))


def _verdict_le(a: RealEnclosure, b: RealEnclosure) -> str:
    """Interval verdict for a <= b."""
    if a.upper <= b.lower:
        return HOLDS
    if a.lower > b.upper:
        return FAILS
    return UNDECIDED


def _hull(a: RealEnclosure, b: RealEnclosure) -> RealEnclosure:
    return RealEnclosure(min(a.lower, b.lower), max(a.upper, b.upper))


# --- Theorem 1.2 steps ----------------------------------------------------------

@dataclass(frozen=True)
class Thm12Report:
    spec: AbelianSpec
    degree: int
    conductor: int
    abs_discriminant: int
    conductor_bound_ok: bool
    interval: tuple[RealEnclosure, RealEnclosure]
    split_prime_congruence: int | None      # p = 1 (mod f) in (|D|^1/2, 5|D|^1/2]
    split_prime_sharp: int | None           # p mod f in H, same interval
    bound_value: RealEnclosure              # (25|D|)^(1/2d)
    generator_search: GeneratorSearch | None = None
    delta_certificate: DeltaCertificate | None = None
    delta_below_split_bound: str | None = None
    delta_below_theorem_bound: str | None = None
    label: str = LABEL


def verify_thm12_steps(spec: AbelianSpec, with_delta: bool = False,
                       budget: EnumerationBudget | None = None) -> Thm12Report:
    rep = field_conductor(spec)
    s = rep.minimized
    d = s.degree
    D = rep.abs_discriminant
    f = rep.conductor
    lo = ScaledSqrt(Fraction(1), Fraction(D))
    hi = ScaledSqrt(Fraction(5), Fraction(D))
    sqrtD = r_exp(_log(D) * Fraction(1, 2))
    interval = (sqrtD, sqrtD * 5)
    ap = APSpec(f, 1)
    p_cong = prime_in_interval_ap(lo, hi, ap) if f > 1 else None
    p_sharp = prime_in_interval_ap(lo, hi, ap, residues=s.subgroup) if f > 1 else None
    bound = r_exp(_log(25 * D) * Fraction(1, 2 * d))
    search = cert = None
    below_p = below_thm = None
    if with_delta and 2 <= d <= 4:
        K = NumberField(defining_polynomial(s))
        if p_sharp is not None:
            search = find_generator_below(K, height_of_root(d, p_sharp), budget)
            if search.exhaustive and not search.found:
                raise ArithmeticError(f"no generator below {p_sharp}^(1/{d}) for {s}")
        cert = delta(K, budget)
        if cert.exhaustive:
            if p_sharp is not None:
                o = compare(cert.height, height_of_root(d, p_sharp))
                below_p = FAILS if o is Ordering.GREATER else HOLDS
            # delta^(2d) <= 25|D|  <=>  M(delta)^2 <= 25|D|
            m = cert.height.mahler
            below_thm = _verdict_le(m * m, RealEnclosure.exact(25 * D))
    return Thm12Report(s, d, f, D, rep.bound_ok, interval, p_cong, p_sharp, bound,
                       search, cert, below_p, below_thm)


# --- Theorem 1.3 family -----------------------------------------------------------

@dataclass(frozen=True)
class FamilyReport:
    m: int
    n: int
    p: int
    q: int
    degree: int
    height_F_generator: LogHeight
    height_alpha: LogHeight
    height_alpha_exact: bool
    disc_M: DiscriminantResult
    disc_M_divisible: bool
    disc_M_caveat: str | None
    disc_K: DiscriminantResult
    disc_K_method: str
    a: int
    b: int
    gamma_minpoly: IntPolynomial
    height_gamma: LogHeight
    lower_bound: RealEnclosure
    upper_bound: RealEnclosure
    lower_verdict: str
    upper_verdict: str
    label: str = LABEL


def _check_family_args(m: int, n: int, p: int, q: int):
    if m < 1:
        raise ValueError("m must be a positive integer")
    if n <= 1:
        raise ValueError("n must be > 1")
    if not is_prime(p):
        raise ValueError(f"p = {p} is not prime")
    if not is_prime(q):
        raise ValueError(f"q = {q} is not prime")
    if not m < p:
        raise ValueError(f"need m < p, got m = {m}, p = {p}")
    if not p < q:
        raise ValueError(f"need p < q, got p = {p}, q = {q}")
    if not q < 2 * p:
        raise ValueError(f"need q < 2p, got q = {q} >= 2p = {2 * p}")


def family_polynomials(m: int, n: int, p: int, q: int) -> tuple[IntPolynomial, IntPolynomial, IntPolynomial]:
    """(F generator polynomial, alpha = (p/q)^(1/n) polynomial, its monic integral model)."""
    f_F = IntPolynomial.x_power_minus(m, 2) if m >= 2 else IntPolynomial([-1, 1])
    f_alpha = IntPolynomial([-p] + [0] * (n - 1) + [q])
    monic = IntPolynomial.x_power_minus(n, p * q ** (n - 1))
    return f_F, f_alpha, monic


def _sandwich(d: int, n: int, D_lo: int, D_hi: int, h: LogHeight):
    e = Fraction(1, 2 * d * (n - 1))
    log2d = _log(2 * d)
    lo = _hull(_log(D_lo) * e, _log(D_hi) * e)
    lower = lo - log2d * Fraction(1, 2)
    upper = lo + log2d * 2
    # lower bound must hold for the largest possible |Delta|, upper for the smallest
    lower_hi = _log(D_hi) * e - log2d * Fraction(1, 2)
    lower_lo = _log(D_lo) * e - log2d * Fraction(1, 2)
    upper_lo = _log(D_lo) * e + log2d * 2
    upper_hi = _log(D_hi) * e + log2d * 2
    lv = _verdict_le(lower_hi, h.log_value)
    if lv != HOLDS and _verdict_le(lower_lo, h.log_value) == FAILS:
        lv = FAILS
    elif lv != HOLDS:
        lv = UNDECIDED
    uv = _verdict_le(h.log_value, upper_lo)
    if uv != HOLDS and _verdict_le(h.log_value, upper_hi) == FAILS:
        uv = FAILS
    elif uv != HOLDS:
        uv = UNDECIDED
    return r_exp(lower), r_exp(upper), lv, uv


def verify_family(m: int, n: int, p: int, q: int, budget: EnumerationBudget | None = None) -> FamilyReport:
    """Check the explicit family K = Q(2^(1/m), (p/q)^(1/n)) against both bounds."""
    _check_family_args(m, n, p, q)
    d = m * n
    f_F, f_alpha, monic = family_polynomials(m, n, p, q)
    h_F = height_algebraic(f_F)
    h_alpha = height_algebraic(f_alpha)
    alpha_exact = h_alpha.mahler.is_exact() and h_alpha.mahler.lower == q

    KM = NumberField(monic)
    disc_M = field_discriminant(KM)
    target = (p * q) ** (n - 1)
    if disc_M.exact:
        divisible, caveat = disc_M.value % target == 0, None
    else:
        divisible = poly_discriminant(monic) % target == 0
        caveat = "checked against the order discriminant; field discriminant not exact"

    comb = best_integer_combination(f_alpha, f_F)
    if comb.minpoly.degree != d:
        raise ArithmeticError(f"[K:Q] = {comb.minpoly.degree}, expected {d}")
    if m == 1:
        disc_K, method = disc_M, "K = M"
    else:
        KF = NumberField(f_F)
        disc_F = field_discriminant(KF)
        if disc_F.exact and disc_M.exact and math.gcd(disc_F.value, disc_M.value) == 1:
            v = abs(disc_F.value) ** n * abs(disc_M.value) ** m
            disc_K, method = DiscriminantResult(v, "exact"), "coprime compositum"
        else:
            disc_K = field_discriminant(NumberField(monic_model(comb.minpoly)))
            method = "generator order"
    D_lo, D_hi = disc_K.abs_bounds()
    lower, upper, lv, uv = _sandwich(d, n, D_lo, D_hi, comb.height)
    return FamilyReport(m, n, p, q, d, h_F, h_alpha, alpha_exact, disc_M, divisible, caveat,
                        disc_K, method, comb.a, comb.b, comb.minpoly, comb.height,
                        lower, upper, lv, uv)


# --- Silverman bound and exponent table ---------------------------------------------

def silverman_lower_bound(d: int, abs_disc: int, F: tuple[int, int] | None = None) -> RealEnclosure:
    """n^(-1/(2(n-1))) * (|Delta_F|^(-n) |Delta_K|)^(1/(2d(n-1))), F = Q when F is None.

    F is given as (n, |Delta_F|) with n = [K:F].
    """
    if d < 2:
        raise ValueError("d must be >= 2")
    if F is None:
        n, DF = d, 1
    else:
        n, DF = F
        if n <= 1:
            raise ValueError("relative degree n must be > 1")
        if d % n:
            raise ValueError("n must divide d")
    norm = Fraction(abs_disc, DF ** n)
    log_b = -_log(n) * Fraction(1, 2 * (n - 1)) + r_log(RealEnclosure.exact(norm)) * Fraction(1, 2 * d * (n - 1))
    return r_exp(log_b)


def smallest_divisor(d: int) -> int:
    return next(k for k in range(2, d + 1) if d % k == 0)


@dataclass(frozen=True)
class ExponentTable:
    d: int
    b: int
    ruppert: Fraction
    ruppert_strong: Fraction
    silverman: Fraction
    vw_threshold: Fraction
    dubickas: Fraction | None
    family: dict[int, Fraction] = field(default_factory=dict)


def exponent_table(d: int) -> ExponentTable:
    if d < 2:
        raise ValueError("d must be >= 2")
    b = smallest_divisor(d)
    if b <= 3:
        vw = Fraction(1, (b + 1) * d)
    else:
        vw = Fraction(1, 2 * (b + 1) * d) + Fraction(1, b * b * (b + 1) * d)
    dub = Fraction(d + 1, 2 * d * d * (d - 1)) if d % 2 else None
    fam = {n: Fraction(1, 2 * d * (n - 1)) for n in divisors(d) if n > 1}
    strong = Fraction(1, 2 * d * (d - 1))
    return ExponentTable(d, b, Fraction(1, 2 * d), strong, strong, vw, dub, fam)


# --- composite fields --------------------------------------------------------------

@dataclass(frozen=True)
class CompositeReport:
    disc_1: int
    disc_2: int
    coprime: bool
    status: str                      # "checked" or "out-of-hypothesis"
    degree: int | None = None
    degree_ok: bool | None = None
    disc_K: int | None = None
    disc_K_exact: bool | None = None
    disc_identity_ok: bool | None = None
    height_sum: LogHeight | None = None
    height_bound_ok: bool | None = None


def composite_coprime_check(f1: IntPolynomial, f2: IntPolynomial) -> CompositeReport:
    r1 = field_discriminant(NumberField(monic_model(f1.primitive())))
    r2 = field_discriminant(NumberField(monic_model(f2.primitive())))
    if not (r1.exact and r2.exact):
        raise ArithmeticError("composite check needs exact discriminants")
    D1, D2 = r1.value, r2.value
    if math.gcd(D1, D2) != 1:
        return CompositeReport(D1, D2, False, "out-of-hypothesis")
    d1, d2 = f1.degree, f2.degree
    g = minpoly_of_combination(f1, f2, 1, 1)
    rK = field_discriminant(NumberField(monic_model(g)))
    expected = abs(D1) ** d2 * abs(D2) ** d1
    h = height_algebraic(g)
    bound = height_algebraic(f1).log_value + height_algebraic(f2).log_value + _log(2)
    return CompositeReport(D1, D2, True, "checked", g.degree, g.degree == d1 * d2,
                           abs(rK.value), rK.exact, rK.exact and abs(rK.value) == expected,
                           h, not (h.log_value > bound))


# --- corpora ------------------------------------------------------------------------

def quadratic_fields(max_abs_disc: int) -> list[tuple[int, int]]:
    """(m, Delta) for every quadratic field Q(sqrt m) with |Delta| <= max_abs_disc."""
    out = []
    for m in range(-max_abs_disc, max_abs_disc + 1):
        if m in (0, 1) or not is_squarefree_int(abs(m)):
            continue
        D = m if m % 4 == 1 else 4 * m
        if abs(D) <= max_abs_disc:
            out.append((m, D))
    return sorted(out, key=lambda t: (abs(t[1]), t[1]))
