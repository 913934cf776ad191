"""Abelian fields as subgroups H of (Z/fZ)^*.

The field attached to (f, H) is the fixed field of H inside Q(zeta_f).  Its
characters are the Dirichlet characters mod f trivial on H; the product of
their conductors is |Delta_K| and their lcm is the conductor of K.
"""

from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from mpmath import iv

from .exactalg.arith import divisors, euler_phi, factorint, is_prime, lcm
from .exactalg.factor import is_irreducible
from .exactalg.intervals import iv_prec, mpf_to_fraction
from .exactalg.polynomial import IntPolynomial

log = logging.getLogger(__name__)

MAX_PERIOD_PRECISION = 1 << 16


@dataclass(frozen=True)
class AbelianSpec:
    modulus: int
    subgroup_gens: tuple[int, ...]
    subgroup: frozenset[int]

    @classmethod
    def build(cls, modulus: int, gens=()) -> "AbelianSpec":
        gens = tuple(int(g) % modulus if modulus > 1 else 0 for g in gens)
        return cls(modulus, gens, frozenset(subgroup_expand(modulus, gens)))

    @property
    def degree(self) -> int:
        return euler_phi(self.modulus) // len(self.subgroup)

    def __str__(self):
        return f"(f={self.modulus}, H={sorted(self.subgroup)})"


def _units(f: int) -> list[int]:
    if f == 1:
        return [0]
    return [a for a in range(1, f) if math.gcd(a, f) == 1]


def subgroup_expand(f: int, gens) -> set[int]:
    """Multiplicative closure of gens and 1 in (Z/fZ)^*."""
    if f < 1:
        raise ValueError("modulus must be positive")
    one = 1 % f
    for g in gens:
        if math.gcd(g, f) != 1:
            raise ValueError(f"generator {g} is not coprime to {f}")
    H = {one}
    frontier = [one]
    gens = [g % f for g in gens]
    while frontier:
        nxt = []
        for h in frontier:
            for g in gens:
                x = h * g % f
                if x not in H:
                    H.add(x)
                    nxt.append(x)
        frontier = nxt
    return H


# --- group structure ------------------------------------------------------------

def _primitive_root(pk: int, p: int) -> int:
    phi = euler_phi(pk)
    qs = list(factorint(phi))
    for g in range(2, pk):
        if math.gcd(g, p) != 1:
            continue
        if all(pow(g, phi // q, pk) != 1 for q in qs):
            return g
    raise ArithmeticError(f"no primitive root mod {pk}")


def _crt_lift(value: int, pk: int, f: int) -> int:
    """Element congruent to value mod pk and 1 mod f/pk."""
    rest = f // pk
    if rest == 1:
        return value % f
    # x = value + pk * t with x = 1 mod rest
    t = ((1 - value) * pow(pk, -1, rest)) % rest
    return (value + pk * t) % f


@lru_cache(maxsize=512)
def unit_group(f: int) -> tuple[tuple[int, ...], tuple[int, ...], dict]:
    """Generators g_j, their orders n_j, and the discrete-log table a -> (x_j)."""
    gens, orders = [], []
    for p, k in sorted(factorint(f).items()):
        pk = p ** k
        if p == 2:
            if k >= 2:
                gens.append(_crt_lift(pk - 1, pk, f))
                orders.append(2)
            if k >= 3:
                gens.append(_crt_lift(5, pk, f))
                orders.append(2 ** (k - 2))
        else:
            gens.append(_crt_lift(_primitive_root(pk, p), pk, f))
            orders.append(euler_phi(pk))
    table = {}
    for xs in itertools.product(*(range(n) for n in orders)):
        a = 1 % f if f > 1 else 0
        for g, x in zip(gens, xs):
            a = a * pow(g, x, f) % f if f > 1 else 0
        table[a] = xs
    return tuple(gens), tuple(orders), table


@dataclass(frozen=True)
class CharacterTable:
    generators: tuple[int, ...]
    orders: tuple[int, ...]
    characters: tuple[tuple[int, ...], ...]
    conductors: tuple[int, ...]

    def __len__(self):
        return len(self.characters)

    def character_orders(self) -> list[int]:
        out = []
        for e in self.characters:
            o = 1
            for ej, nj in zip(e, self.orders):
                o = lcm(o, nj // math.gcd(ej, nj))
            out.append(o)
        return out


def _phase(e, xs, orders) -> Fraction:
    return sum((Fraction(ej * xj, nj) for ej, xj, nj in zip(e, xs, orders)), Fraction(0)) % 1


def _character_conductor(f: int, e, orders, table) -> int:
    for m in divisors(f):
        if all(_phase(e, xs, orders) == 0 for a, xs in table.items() if a % m == 1 % m):
            return m
    return f


def character_group(spec: AbelianSpec) -> CharacterTable:
    """Characters mod f trivial on H, as exponent vectors on the unit-group generators."""
    f = spec.modulus
    gens, orders, table = unit_group(f)
    hlogs = [table[h] for h in spec.subgroup]
    chars, conds = [], []
    for e in itertools.product(*(range(n) for n in orders)):
        if all(_phase(e, xs, orders) == 0 for xs in hlogs):
            chars.append(e)
            conds.append(_character_conductor(f, e, orders, table))
    if len(chars) != spec.degree:
        raise ArithmeticError("character count differs from the field degree")
    return CharacterTable(gens, orders, tuple(chars), tuple(conds))


def conductor_discriminant(spec: AbelianSpec) -> int:
    """|Delta_K| as the product of the character conductors."""
    return math.prod(character_group(spec).conductors)


@dataclass(frozen=True)
class ConductorReport:
    conductor: int
    minimized: AbelianSpec
    abs_discriminant: int
    bound_ok: bool          # f <= |Delta|^(2/d), decided as f^d <= |Delta|^2


def minimize(spec: AbelianSpec, conductor: int) -> AbelianSpec:
    if conductor == spec.modulus:
        return spec
    image = sorted({h % conductor for h in spec.subgroup}) if conductor > 1 else []
    return AbelianSpec.build(conductor, image)


def field_conductor(spec: AbelianSpec) -> ConductorReport:
    table = character_group(spec)
    cond = 1
    for c in table.conductors:
        cond = lcm(cond, c)
    disc = math.prod(table.conductors)
    d = spec.degree
    return ConductorReport(cond, minimize(spec, cond), disc, cond ** d <= disc ** 2)


# --- Gaussian periods ---------------------------------------------------------

def coset_representatives(spec: AbelianSpec) -> list[int]:
    seen: set[int] = set()
    reps = []
    f = spec.modulus
    for a in _units(f):
        if a in seen:
            continue
        reps.append(a)
        seen.update(a * h % f for h in spec.subgroup)
    return reps


def _iv_poly_from_roots(roots):
    """Coefficients (constant first) of prod (x - r) for complex interval pairs."""
    coeffs = [(iv.mpf(1), iv.mpf(0))]
    for rr, ri in roots:
        nxt = [(iv.mpf(0), iv.mpf(0)) for _ in range(len(coeffs) + 1)]
        for k, (cr, ci) in enumerate(coeffs):
            nxt[k + 1] = (nxt[k + 1][0] + cr, nxt[k + 1][1] + ci)
            nxt[k] = (nxt[k][0] - (cr * rr - ci * ri), nxt[k][1] - (cr * ri + ci * rr))
        coeffs = nxt
    return coeffs


def _round_certified(x) -> int | None:
    lo, hi = (mpf_to_fraction(e) for e in x._mpi_)
    n = round((lo + hi) / 2)
    if n - Fraction(1, 2) < lo and hi < n + Fraction(1, 2):
        return n
    return None


def defining_polynomial(spec: AbelianSpec) -> IntPolynomial:
    """Minimal polynomial of the Gaussian period sum_{h in H} zeta_f^h."""
    f, d = spec.modulus, spec.degree
    if d == 1:
        return _degree_one(spec)
    reps = coset_representatives(spec)
    H = sorted(spec.subgroup)
    prec = 128 + f * d
    while prec <= MAX_PERIOD_PRECISION:
        with iv_prec(prec):
            roots = []
            for c in reps:
                re, im = iv.mpf(0), iv.mpf(0)
                for h in H:
                    ang = 2 * iv.pi * ((c * h) % f) / f
                    re += iv.cos(ang)
                    im += iv.sin(ang)
                roots.append((re, im))
            coeffs = _iv_poly_from_roots(roots)
            ints = []
            for cr, ci in coeffs:
                n = _round_certified(cr)
                im_lo, im_hi = (mpf_to_fraction(e) for e in ci._mpi_)
                if n is None or not (im_lo <= 0 <= im_hi) or im_hi - im_lo > 1:
                    ints = None
                    break
                ints.append(n)
        if ints is not None:
            g = IntPolynomial(ints)
            if g.degree != d or not is_irreducible(g):
                raise ArithmeticError(f"period polynomial for {spec} is not irreducible of degree {d}")
            return g
        prec *= 2
    raise ArithmeticError(f"period precision exceeded {MAX_PERIOD_PRECISION} bits for {spec}")


def _degree_one(spec: AbelianSpec) -> IntPolynomial:
    # the period is the Ramanujan sum c_f(1) = mu(f); the field is Q
    f = spec.modulus
    fac = factorint(f)
    mu = 0 if any(e > 1 for e in fac.values()) else (-1) ** len(fac)
    return IntPolynomial([-mu, 1])


def splits_completely_abelian(spec: AbelianSpec, p: int) -> bool:
    """p splits completely iff p is unramified and p mod f lies in H (f the conductor)."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    rep = field_conductor(spec)
    s = rep.minimized
    if s.modulus == 1:
        return True
    if s.modulus % p == 0:
        return False
    return p % s.modulus in s.subgroup


# --- corpus -----------------------------------------------------------------

def all_subgroups(f: int) -> list[frozenset[int]]:
    G = _units(f)
    found = {frozenset({1 % f})}
    frontier = list(found)
    while frontier:
        nxt = []
        for S in frontier:
            for g in G:
                if g in S:
                    continue
                T = frozenset(subgroup_expand(f, list(S) + [g]))
                if T not in found:
                    found.add(T)
                    nxt.append(T)
        frontier = nxt
    return sorted(found, key=lambda S: (-len(S), sorted(S)))


def corpus(max_conductor: int = 50) -> list[AbelianSpec]:
    """Every abelian field of conductor f with 3 <= f <= max_conductor, once each."""
    out = []
    for f in range(3, max_conductor + 1):
        if f % 4 == 2:
            continue
        for S in all_subgroups(f):
            spec = AbelianSpec(f, tuple(sorted(S)), S)
            if spec.degree < 2:
                continue
            if field_conductor(spec).conductor == f:
                out.append(spec)
    return out
