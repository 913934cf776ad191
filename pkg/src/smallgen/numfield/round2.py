"""p-maximal orders by the Round 2 algorithm.

Start from Z[theta] and repeatedly replace the order O by the multiplier ring
of its p-radical I_p = {x in O : x^(p^j) in pO}.  Every lattice involved lies
between pO and O, so it is described by an F_p-subspace of O/pO and all the
linear algebra happens over F_p.  The loop stops when the multiplier ring
equals O, which is then p-maximal.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .field import FieldElement, NumberField


@dataclass(frozen=True)
class PMaximalOrder:
    p: int
    basis: tuple[FieldElement, ...]
    index_exponent: int          # [O_p : Z[theta]] = p^index_exponent

    def disc_valuation(self, poly_disc_valuation: int) -> int:
        return poly_disc_valuation - 2 * self.index_exponent


# --- linear algebra over F_p ------------------------------------------------------

def _rref_mod_p(rows: list[list[int]], p: int) -> tuple[list[list[int]], list[int]]:
    m = [[x % p for x in r] for r in rows]
    pivots = []
    r = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][c], -1, p)
        m[r] = [x * inv % p for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [(a - f * b) % p for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def _left_kernel_mod_p(rows: list[list[int]], p: int) -> list[list[int]]:
    """Basis of {c : sum c_i rows_i = 0 (mod p)}."""
    n = len(rows)
    aug = [list(r) + [1 if j == i else 0 for j in range(n)] for i, r in enumerate(rows)]
    width = len(rows[0]) if rows else 0
    red, pivots = _rref_mod_p(aug, p)
    out = [r[width:] for r, c in zip(red, pivots) if c >= width]
    # rows whose pivot lies in the identity block have zero left part
    return out


def _lattice_basis(subspace: list[list[int]], d: int, p: int) -> list[list[int]]:
    """Z-basis of {v in Z^d : v mod p in subspace}: RREF lifts plus p e_j off the pivots."""
    red, pivots = _rref_mod_p(subspace, p) if subspace else ([], [])
    basis = [list(r) for r in red]
    for j in range(d):
        if j not in pivots:
            basis.append([p if k == j else 0 for k in range(d)])
    return basis


# --- rational matrices -----------------------------------------------------------

def _inverse(M: list[list[Fraction]]) -> list[list[Fraction]]:
    n = len(M)
    a = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(M)]
    for c in range(n):
        piv = next(i for i in range(c, n) if a[i][c])
        a[c], a[piv] = a[piv], a[c]
        inv = 1 / a[c][c]
        a[c] = [x * inv for x in a[c]]
        for i in range(n):
            if i != c and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return [r[n:] for r in a]


def _coords(x: FieldElement, inv: list[list[Fraction]]) -> list[int]:
    """Integer coordinates of x in the basis whose inverse matrix is inv."""
    d = len(inv)
    out = []
    for j in range(d):
        s = sum((x.coords[i] * inv[i][j] for i in range(d) if x.coords[i]), Fraction(0))
        if s.denominator != 1:
            raise ArithmeticError("element is not in the lattice")
        out.append(int(s))
    return out


def _combine(K: NumberField, basis, vec, scale=Fraction(1)) -> FieldElement:
    acc = K.zero()
    for c, w in zip(vec, basis):
        if c:
            acc = acc + w * c
    return acc * scale if scale != 1 else acc


def _matrix(basis) -> list[list[Fraction]]:
    return [list(w.coords) for w in basis]


# --- Round 2 ----------------------------------------------------------------------

def p_maximal_order(K: NumberField, p: int, max_rounds: int = 64) -> PMaximalOrder:
    d = K.degree
    theta = K.theta
    basis = [theta ** i for i in range(d)]
    index_exp = 0
    j = 1
    while p ** j < d:
        j += 1
    frob_exp = p ** j
    for _ in range(max_rounds):
        inv = _inverse(_matrix(basis))
        # p-radical: kernel of x -> x^(p^j) on O/pO
        frob_rows = [[c % p for c in _coords(w ** frob_exp, inv)] for w in basis]
        rad = _left_kernel_mod_p(frob_rows, p)
        I_vecs = _lattice_basis(rad, d, p)
        I_basis = [_combine(K, basis, v) for v in I_vecs]
        I_inv = _inverse(_matrix(I_basis))
        # multipliers: x in O with x I contained in p I
        rows = []
        for w in basis:
            row = []
            for g in I_basis:
                row.extend(c % p for c in _coords(w * g, I_inv))
            rows.append(row)
        U = _left_kernel_mod_p(rows, p)
        if not U:
            return PMaximalOrder(p, tuple(basis), index_exp)
        U_vecs = _lattice_basis(U, d, p)
        basis = [_combine(K, basis, v, Fraction(1, p)) for v in U_vecs]
        index_exp += len(U)
    raise ArithmeticError(f"Round 2 did not stabilise at p = {p}")


def frobenius_is_identity(order: PMaximalOrder, K: NumberField) -> tuple[bool, bool]:
    """(unramified, totally split) at p for the p-maximal order."""
    p = order.p
    basis = list(order.basis)
    inv = _inverse(_matrix(basis))
    d = len(basis)
    j = 1
    while p ** j < d:
        j += 1
    frob_rows = [[c % p for c in _coords(w ** (p ** j), inv)] for w in basis]
    if _left_kernel_mod_p(frob_rows, p):
        return False, False
    ident = True
    for i, w in enumerate(basis):
        c = [x % p for x in _coords(w ** p, inv)]
        if c != [1 if k == i else 0 for k in range(d)]:
            ident = False
            break
    return True, ident
