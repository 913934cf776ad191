"""Number fields Q[x]/(g) in the power basis and their elements."""

from __future__ import annotations

from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from ..exactalg.factor import is_irreducible
from ..exactalg.intervals import ComplexEnclosure
from ..exactalg.polynomial import IntPolynomial, pdivmod, primitive_int, trim
from ..exactalg.roots import complex_roots

REFERENCE_WIDTH = Fraction(1, 1 << 100)


class NumberField:
    """Q[x]/(g) for a monic irreducible integer polynomial g.

    The embeddings (certified roots of g) are computed once at construction.
    """

    def __init__(self, defining_poly: IntPolynomial | Sequence[int], check: bool = True):
        g = defining_poly if isinstance(defining_poly, IntPolynomial) else IntPolynomial(defining_poly)
        if check:
            if g.degree < 1 or g.lead != 1:
                raise ValueError(f"defining polynomial must be monic of degree >= 1: {g}")
            if not is_irreducible(g):
                raise ValueError(f"defining polynomial is reducible: {g}")
        self.defining_poly = g
        self.degree = g.degree
        self.roots: tuple[ComplexEnclosure, ...] = tuple(complex_roots(g, REFERENCE_WIDTH))
        r1 = sum(1 for e in self.roots if e.is_real())
        self.signature = (r1, (self.degree - r1) // 2)

    @classmethod
    def from_coefficients(cls, *high_first: int) -> "NumberField":
        return cls(IntPolynomial.from_high(*high_first))

    def __eq__(self, other):
        return isinstance(other, NumberField) and self.defining_poly == other.defining_poly

    def __hash__(self):
        return hash(("NumberField", self.defining_poly.coeffs))

    def __repr__(self):
        return f"NumberField({self.defining_poly})"

    def __call__(self, coords: Iterable) -> "FieldElement":
        return FieldElement(self, coords)

    @property
    def theta(self) -> "FieldElement":
        if self.degree == 1:
            return self([-self.defining_poly[0]])
        return self([0, 1])

    def one(self) -> "FieldElement":
        return self([1])

    def zero(self) -> "FieldElement":
        return self([])

    def rational(self, q) -> "FieldElement":
        return self([Fraction(q)])

    def from_poly(self, poly: Sequence) -> "FieldElement":
        """Element h(theta) for a rational coefficient list h."""
        return FieldElement(self, reduce_mod(poly, self.defining_poly.coeffs))

    @cached_property
    def _mul_table(self):
        # theta^k reduced, k < 2d - 1
        d = self.degree
        g = self.defining_poly.coeffs
        out = []
        cur = [Fraction(1)]
        for _ in range(2 * d - 1):
            out.append(reduce_mod(cur, g))
            cur = [Fraction(0)] + list(cur)
        return out


def reduce_mod(poly: Sequence, g: Sequence[int]) -> tuple[Fraction, ...]:
    d = len(g) - 1
    p = [Fraction(c) for c in poly]
    if len(p) > d:
        _, p = pdivmod(p, g)
    p = trim(list(p))
    return tuple(p + [Fraction(0)] * (d - len(p)))


class FieldElement:
    """Element sum c_i theta^i with rational coordinates (length d)."""

    __slots__ = ("field", "coords")

    def __init__(self, field: NumberField, coords: Iterable):
        cs = [Fraction(c) for c in coords]
        d = field.degree
        if len(cs) > d:
            cs = list(reduce_mod(cs, field.defining_poly.coeffs))
        self.field = field
        self.coords = tuple(cs + [Fraction(0)] * (d - len(cs)))

    def _check(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise ValueError("elements of different fields")
            return other
        return self.field.rational(other)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def is_rational(self) -> bool:
        return not any(self.coords[1:])

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.field.rational(other)
        return isinstance(other, FieldElement) and self.field == other.field \
            and self.coords == other.coords

    def __hash__(self):
        return hash((self.field, self.coords))

    def __add__(self, other):
        o = self._check(other)
        return FieldElement(self.field, [a + b for a, b in zip(self.coords, o.coords)])

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, [-a for a in self.coords])

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        o = self._check(other)
        d = self.field.degree
        table = self.field._mul_table
        acc = [Fraction(0)] * d
        for i, a in enumerate(self.coords):
            if not a:
                continue
            for j, b in enumerate(o.coords):
                if not b:
                    continue
                ab = a * b
                for k, c in enumerate(table[i + j]):
                    if c:
                        acc[k] += ab * c
        return FieldElement(self.field, acc)

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise ZeroDivisionError("division by zero in number field")
        g = [Fraction(c) for c in self.field.defining_poly.coeffs]
        a = trim(list(self.coords))
        # extended Euclid: s*a + t*g = 1
        r0, r1 = g, a
        s0, s1 = [], [Fraction(1)]
        while len(r1) > 1:
            q, r = pdivmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _psub(s0, _pmul(q, s1))
        c = r1[0]
        return FieldElement(self.field, reduce_mod([x / c for x in s1], self.field.defining_poly.coeffs))

    def __truediv__(self, other):
        return self * self._check(other).inverse()

    def __rtruediv__(self, other):
        return self._check(other) * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        out = self.field.one()
        base = self
        while e:
            if e & 1:
                out = out * base
            e >>= 1
            if e:
                base = base * base
        return out

    def multiplication_matrix(self) -> list[list[Fraction]]:
        """Columns are the coordinates of self * theta^j."""
        d = self.field.degree
        cols = []
        basis = self.field.one()
        th = self.field.theta
        for _ in range(d):
            cols.append((self * basis).coords)
            basis = basis * th
        return [[cols[j][i] for j in range(d)] for i in range(d)]

    def minimal_polynomial(self) -> IntPolynomial:
        return minimal_polynomial(self)

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coords):
            if c:
                terms.append(f"{c}" + ("" if i == 0 else ("*t" if i == 1 else f"*t^{i}")))
        return "FieldElement(" + (" + ".join(terms) if terms else "0") + ")"


def _pmul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return trim(out)


def _psub(a, b):
    n = max(len(a), len(b))
    return trim([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)])


def element_arithmetic(a: FieldElement, b: FieldElement, op: str) -> FieldElement:
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    if op == "sub":
        return a - b
    raise ValueError(f"unknown operation {op!r}")


def minimal_polynomial(alpha: FieldElement) -> IntPolynomial:
    """Primitive minimal polynomial of alpha over Q.

    Found as the first linear dependency among 1, alpha, alpha^2, ... by exact
    rational elimination; this is the minimal polynomial of the multiplication
    matrix, i.e. the irreducible factor of its characteristic polynomial.
    """
    d = alpha.field.degree
    rows: list[tuple[list[Fraction], list[Fraction]]] = []  # (reduced vector, combination)
    power = alpha.field.one()
    for k in range(d + 1):
        vec = list(power.coords)
        comb = [Fraction(0)] * (d + 1)
        comb[k] = Fraction(1)
        for pivot, (rv, rc) in rows_by_pivot(rows):
            if vec[pivot]:
                f = vec[pivot] / rv[pivot]
                vec = [x - f * y for x, y in zip(vec, rv)]
                comb = [x - f * y for x, y in zip(comb, rc)]
        if not any(vec):
            return IntPolynomial(primitive_int(comb[: k + 1]))
        rows.append((vec, comb))
        power = power * alpha
    raise ArithmeticError("no linear dependency found (impossible in a field)")


def rows_by_pivot(rows):
    for rv, rc in rows:
        pivot = next(i for i, x in enumerate(rv) if x)
        yield pivot, (rv, rc)
