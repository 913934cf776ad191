"""Dedekind's criterion, field discriminants and complete splitting.

For each prime p with p^2 | disc(g), Dedekind's criterion either shows that
Z[theta] is p-maximal or, when v_p(disc g) <= 3, that the index is exactly p.
Remaining primes go through the Round 2 p-maximal order.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import lru_cache

from ..exactalg.arith import factorint, is_prime
from ..exactalg.finite_field import (
    count_roots_mod_p,
    factor_mod_p_lists,
    fp_divmod,
    fp_gcd,
    fp_mul,
    fp_reduce,
)
from ..exactalg.polynomial import IntPolynomial, poly_discriminant
from .field import NumberField
from .round2 import frobenius_is_identity, p_maximal_order

log = logging.getLogger(__name__)

@dataclass(frozen=True)
class DiscriminantResult:
    """Discriminant with certainty status.

    When ``status == "exact"`` the value is Delta_K.  Otherwise value/Delta_K
    is a perfect square supported on ``uncertain_primes``.
    """

    value: int
    status: str
    uncertain_primes: tuple[int, ...] = ()
    certificates: dict = field(default_factory=dict, compare=False)

    @property
    def exact(self) -> bool:
        return self.status == "exact"

    def abs_bounds(self) -> tuple[int, int]:
        """Smallest and largest possible |Delta_K| consistent with the status."""
        v = abs(self.value)
        if self.exact:
            return v, v
        lo = v
        for p in self.uncertain_primes:
            e = 0
            while lo % (p * p) == 0 and e < 10_000:
                lo //= p * p
                e += 1
        return lo, v


def _dedekind_data(g: list[int], p: int):
    """Return (maximal, U) where U is the lifted enlargement polynomial when not maximal."""
    gbar = fp_reduce(g, p)
    _, facs = factor_mod_p_lists(g, p)
    G = [1]
    H = [1]
    for t, e in facs:
        G = fp_mul(G, t, p)
        for _ in range(e - 1):
            H = fp_mul(H, t, p)
    # F = (g - lift(G) lift(H)) / p with lifts taken as representatives in [0, p)
    GH = _int_mul(G, H)
    diff = [(g[i] if i < len(g) else 0) - (GH[i] if i < len(GH) else 0)
            for i in range(max(len(g), len(GH)))]
    assert all(c % p == 0 for c in diff)
    F = fp_reduce([c // p for c in diff], p)
    Z = fp_gcd(fp_gcd(F, G, p), H, p) if F else fp_gcd(G, H, p)
    if len(Z) <= 1:
        return True, None
    U = fp_divmod(gbar, Z, p)[0]
    return False, U


def _int_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


@lru_cache(maxsize=4096)
def _dedekind_cached(coeffs: tuple[int, ...], p: int):
    return _dedekind_data(list(coeffs), p)


def dedekind_p_maximal(K: NumberField | IntPolynomial, p: int) -> bool:
    """Is Z[theta] maximal at p (Dedekind's criterion)?"""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    g = K.defining_poly if isinstance(K, NumberField) else K
    return _dedekind_cached(g.coeffs, p)[0]


def local_discriminant_exponent(K: NumberField, p: int) -> int:
    """Certified v_p(Delta_K) from the p-maximal order."""
    order = p_maximal_order(K, p)
    return order.disc_valuation(_valuation(poly_discriminant(K.defining_poly), p))


def _valuation(n: int, p: int) -> int:
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


@lru_cache(maxsize=1024)
def _field_discriminant_cached(K: NumberField) -> DiscriminantResult:
    D = poly_discriminant(K.defining_poly)
    value = D
    uncertain = []
    certs = {}
    for p, e in sorted(factorint(D).items()):
        if e < 2:
            continue
        if dedekind_p_maximal(K, p):
            certs[p] = ("dedekind", str(K.defining_poly))
            continue
        if e <= 3:
            # index divisible by p exactly once
            value //= p * p
            certs[p] = ("index-p", str(K.defining_poly))
            continue
        ep = local_discriminant_exponent(K, p)
        value //= p ** (e - ep)
        certs[p] = ("round2", str(K.defining_poly))
    if uncertain:
        return DiscriminantResult(value, "up_to_squares", tuple(uncertain), certs)
    return DiscriminantResult(value, "exact", (), certs)


def field_discriminant(K: NumberField) -> DiscriminantResult:
    return _field_discriminant_cached(K)


def splits_completely(K: NumberField, p: int) -> bool:
    """Does p split into d distinct degree-one primes of K?"""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    g = K.defining_poly
    d = K.degree
    D = poly_discriminant(g)
    if D % p:
        return count_roots_mod_p(g.coeffs, p) == d
    if dedekind_p_maximal(K, p):
        return False  # p | disc and Z[theta] p-maximal: ramified
    # order index divisible by p: decide on the p-maximal order
    unramified, split = frobenius_is_identity(p_maximal_order(K, p), K)
    return unramified and split
