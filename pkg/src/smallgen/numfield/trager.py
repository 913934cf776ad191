"""Root-in-field and isomorphism tests (Trager norms) and minimal
polynomials of integer combinations of two algebraic numbers."""

from __future__ import annotations

import logging
from fractions import Fraction

from ..exactalg.factor import factor_over_Q, is_irreducible
from ..exactalg.intervals import ComplexEnclosure
from ..exactalg.polynomial import (
    IntPolynomial,
    bivariate_resultant,
    is_squarefree,
    pcompose,
    primitive_int,
)
from ..exactalg.roots import complex_roots
from .field import FieldElement, NumberField

log = logging.getLogger(__name__)

MAX_SHIFT = 64


class AmbiguousCombinationError(ArithmeticError):
    pass


# --- polynomials over K (lists of FieldElement, constant first) -------------

def _ktrim(a: list[FieldElement]) -> list[FieldElement]:
    while a and a[-1].is_zero():
        a.pop()
    return a


def _kdivmod(a, b):
    r = list(a)
    db = len(b) - 1
    inv = b[-1].inverse()
    if len(r) - 1 < db:
        return [], _ktrim(r)
    q = [None] * (len(r) - db)
    for k in range(len(r) - 1 - db, -1, -1):
        c = r[k + db] * inv
        q[k] = c
        if not c.is_zero():
            for j in range(db + 1):
                r[k + j] = r[k + j] - c * b[j]
    return _ktrim(q), _ktrim(r[:db])


def kgcd(a: list[FieldElement], b: list[FieldElement]) -> list[FieldElement]:
    """Monic gcd in K[x]."""
    a, b = _ktrim(list(a)), _ktrim(list(b))
    while b:
        _, r = _kdivmod(a, b)
        a, b = b, r
    if not a:
        return a
    inv = a[-1].inverse()
    return [c * inv for c in a]


def _shifted(h: IntPolynomial, shift: FieldElement) -> list[FieldElement]:
    """h(x + shift) as a polynomial over K."""
    K = shift.field
    out = [K.zero()]
    for c in reversed(h.coeffs):
        # out = out * (x + shift) + c
        nxt = [K.zero()] * (len(out) + 1)
        for i, a in enumerate(out):
            nxt[i + 1] = nxt[i + 1] + a
            nxt[i] = nxt[i] + a * shift
        nxt[0] = nxt[0] + c
        out = _ktrim(nxt)
    return out


def trager_norm(f: IntPolynomial, g: IntPolynomial, s: int) -> IntPolynomial:
    """Res_y(g(y), f(x - s*y)) for monic g."""
    def make(x0):
        return [int(c) for c in pcompose(f.coeffs, [x0, -s])]
    return IntPolynomial(bivariate_resultant(g.coeffs, make, g.degree * f.degree))


def factor_over_field(f: IntPolynomial, K: NumberField) -> tuple[list[list[FieldElement]], int]:
    """Monic irreducible factors of squarefree f over K, and the Trager shift used."""
    g = K.defining_poly
    for s in range(1, MAX_SHIFT + 1):
        norm = trager_norm(f, g, s)
        if is_squarefree(norm):
            break
    else:
        raise ArithmeticError("no squarefree Trager norm found")
    log.debug("Trager shift s=%d for f=%s over %s", s, f, K)
    fk = [K.rational(c) for c in f.coeffs]
    shift = K.theta * s
    out = []
    for h, _ in factor_over_Q(norm)[1]:
        gk = kgcd(fk, _shifted(h, shift))
        if len(gk) > 1:
            out.append(gk)
    return out, s


def has_root_in_field(f: IntPolynomial, K: NumberField) -> bool:
    """True iff the irreducible polynomial f has a root in K."""
    if not is_irreducible(f):
        raise ValueError(f"{f} is reducible")
    if f.degree == 1:
        return True
    if f.degree > K.degree or K.degree % f.degree:
        return False
    if f.primitive() == K.defining_poly:
        return True
    factors, _ = factor_over_field(f, K)
    return any(len(gk) == 2 for gk in factors)


def root_in_field(f: IntPolynomial, K: NumberField) -> FieldElement | None:
    """Some root of irreducible f in K, or None."""
    if f.degree == 1:
        return K.rational(Fraction(-f[0], f[1]))
    factors, _ = factor_over_field(f, K)
    for gk in factors:
        if len(gk) == 2:
            return -gk[0]
    return None


def fields_isomorphic(f: IntPolynomial, g: IntPolynomial) -> bool:
    if not is_irreducible(f) or not is_irreducible(g):
        raise ValueError("fields_isomorphic needs irreducible polynomials")
    if f.degree != g.degree:
        return False
    return has_root_in_field(f, NumberField(monic_model(g), check=False))


def monic_model(g: IntPolynomial) -> IntPolynomial:
    """Monic integer polynomial of a_n * root: a_n^{n-1} g(x / a_n)."""
    n = g.degree
    a = g.lead
    if a == 1:
        return g
    return IntPolynomial([c * a ** (n - 1 - i) if i < n else 1 for i, c in enumerate(g.coeffs)])


# --- combinations -----------------------------------------------------------

def _enclosure_values(e: ComplexEnclosure):
    return e.center_re, e.center_im, e.radius


def minpoly_of_combination(f_alpha: IntPolynomial, f_beta: IntPolynomial, a: int, b: int) -> IntPolynomial:
    """Minimal polynomial of a*alpha + b*beta for the designated roots.

    The designated root of each polynomial is the first of its certified roots
    ordered by (real part, imaginary part).
    """
    if (a, b) == (0, 0):
        raise ValueError("(a, b) must not be (0, 0)")
    f_alpha, f_beta = f_alpha.primitive(), f_beta.primitive()
    if b == 0:
        return f_alpha.scale_root(a)
    if a == 0:
        return f_beta.scale_root(b)
    n_b = f_beta.degree
    # b^n f_beta((x - a y) / b), integer in x and y
    def make(x0):
        # coefficients in y of sum_k c_k b^(n-k) (x0 - a y)^k
        out = [0]
        for k, c in enumerate(f_beta.coeffs):
            term = pcompose([0] * k + [1], [x0, -a])
            scale = c * b ** (n_b - k)
            out = _iadd(out, [scale * t for t in term])
        return [int(t) for t in out]
    # non-monic f_alpha only scales the resultant by a power of its lead
    res = IntPolynomial(bivariate_resultant(f_alpha.coeffs, make, f_alpha.degree * n_b))
    candidates = [h for h, _ in factor_over_Q(res)[1]]
    if len(candidates) == 1:
        return candidates[0]
    ra = complex_roots(f_alpha)[0]
    rb = complex_roots(f_beta)[0]
    return _select_factor(candidates, ra, rb, a, b, f_alpha, f_beta)


def _iadd(a, b):
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)]


def _select_factor(candidates, ra, rb, a, b, f_alpha, f_beta):
    width = Fraction(1, 1 << 60)
    for _ in range(8):
        ra = complex_roots(f_alpha, width)[0]
        rb = complex_roots(f_beta, width)[0]
        cre = a * ra.center_re + b * rb.center_re
        cim = a * ra.center_im + b * rb.center_im
        rad = abs(a) * ra.radius + abs(b) * rb.radius
        hits = []
        for h in candidates:
            for e in complex_roots(h, width):
                dist2 = (e.center_re - cre) ** 2 + (e.center_im - cim) ** 2
                if dist2 <= (rad + e.radius) ** 2:
                    hits.append(h)
                    break
        if len(hits) == 1:
            return hits[0]
        if not hits:
            raise ArithmeticError("no factor contains the combination (enclosure failure)")
        width = width * width
    raise AmbiguousCombinationError("could not isolate a unique factor for the combination")


def combination_element_degree(f_alpha: IntPolynomial, f_beta: IntPolynomial, a: int, b: int) -> int:
    return minpoly_of_combination(f_alpha, f_beta, a, b).degree
