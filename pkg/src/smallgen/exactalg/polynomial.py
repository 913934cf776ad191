"""Dense univariate polynomials with integer and rational coefficients.

Coefficient lists are stored constant term first; the zero polynomial is the
empty list.  ``IntPolynomial`` is the immutable public type; the module-level
helpers operate on plain lists of ``int`` or ``Fraction`` and are shared by
the factorization, root-finding and number-field code.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence


# ---------------------------------------------------------------------------
# list helpers (coefficients constant term first)
# ---------------------------------------------------------------------------

def trim(a: list) -> list:
    while a and a[-1] == 0:
        a.pop()
    return a


def padd(a: Sequence, b: Sequence) -> list:
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)]
    return trim(out)


def psub(a: Sequence, b: Sequence) -> list:
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]
    return trim(out)


def pscale(a: Sequence, c) -> list:
    if c == 0:
        return []
    return [c * x for x in a]


def pmul(a: Sequence, b: Sequence) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return trim(out)


def pdivmod(a: Sequence, b: Sequence) -> tuple[list, list]:
    """Division with remainder over Q (Fraction results when needed)."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = [Fraction(x) for x in a]
    lb = Fraction(b[-1])
    db = len(b) - 1
    if len(r) - 1 < db:
        return [], trim(r)
    q = [Fraction(0)] * (len(r) - db)
    for k in range(len(r) - 1 - db, -1, -1):
        c = r[k + db] / lb
        q[k] = c
        if c:
            for j in range(db + 1):
                r[k + j] -= c * b[j]
    return trim(q), trim(r[:db])


def pexact_div_int(a: Sequence[int], b: Sequence[int]) -> list[int]:
    """Exact division of integer polynomials; raises if not exact over Z."""
    q, r = pdivmod(a, b)
    if r or any(c.denominator != 1 for c in q):
        raise ArithmeticError("polynomial division is not exact over Z")
    return [int(c) for c in q]


def pmonic(a: Sequence) -> list:
    lc = Fraction(a[-1])
    return [Fraction(x) / lc for x in a]


def pgcd_q(a: Sequence, b: Sequence) -> list:
    """Monic gcd over Q."""
    a, b = trim(list(a)), trim(list(b))
    while b:
        _, r = pdivmod(a, b)
        a, b = b, r
    return pmonic(a) if a else []


def pderiv(a: Sequence) -> list:
    return trim([i * a[i] for i in range(1, len(a))])


def peval(a: Sequence, x):
    acc = 0
    for c in reversed(a):
        acc = acc * x + c
    return acc


def pcompose(a: Sequence, b: Sequence) -> list:
    """a(b(x))."""
    out: list = []
    for c in reversed(a):
        out = padd(pmul(out, b), [c] if c else [])
    return out


def content(a: Sequence[int]) -> int:
    return reduce(math.gcd, a, 0)


def primitive_int(a: Sequence) -> list[int]:
    """Scale a rational list to a primitive integer list with positive lead."""
    a = trim(list(a))
    if not a:
        return []
    den = reduce(lambda x, y: x * y // math.gcd(x, y),
                 (Fraction(c).denominator for c in a), 1)
    ints = [int(Fraction(c) * den) for c in a]
    g = content(ints)
    ints = [c // g for c in ints]
    if ints[-1] < 0:
        ints = [-c for c in ints]
    return ints


def ppow(a: Sequence, e: int) -> list:
    out: list = [1]
    base = list(a)
    while e:
        if e & 1:
            out = pmul(out, base)
        e >>= 1
        if e:
            base = pmul(base, base)
    return out


# ---------------------------------------------------------------------------
# determinants / resultants over Z
# ---------------------------------------------------------------------------

def bareiss_det(m: list[list[int]]) -> int:
    """Fraction-free determinant of an integer matrix."""
    n = len(m)
    if n == 0:
        return 1
    a = [list(row) for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
        prev = akk
    return sign * a[n - 1][n - 1]


def resultant(a: Sequence[int], b: Sequence[int]) -> int:
    """Res(a, b) as the Sylvester determinant."""
    a, b = trim(list(a)), trim(list(b))
    if not a or not b:
        return 0
    m, n = len(a) - 1, len(b) - 1
    if m == 0:
        return a[0] ** n
    if n == 0:
        return b[0] ** m
    size = m + n
    rows = []
    ra = list(reversed(a))
    rb = list(reversed(b))
    for i in range(n):
        rows.append([0] * i + ra + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + rb + [0] * (size - n - 1 - i))
    return bareiss_det(rows)


def interpolate(xs: Sequence[int], ys: Sequence[int]) -> list[Fraction]:
    """Lagrange interpolation through integer nodes (Newton divided differences)."""
    n = len(xs)
    coef = [Fraction(y) for y in ys]
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    out: list = [coef[-1]]
    for i in range(n - 2, -1, -1):
        out = padd(pmul(out, [-xs[i], 1]), [coef[i]])
    return trim(out)


def bivariate_resultant(g: Sequence[int], make_poly, out_degree: int) -> list[int]:
    """Res_y(g(y), F(x, y)) as an integer polynomial in x.

    ``make_poly(x0)`` returns the integer coefficient list of F(x0, y) in y.
    ``out_degree`` bounds the x-degree of the resultant; values at
    ``out_degree + 1`` integer nodes are interpolated.
    """
    xs = list(range(out_degree + 1))
    ys = [resultant(g, make_poly(x0)) for x0 in xs]
    poly = interpolate(xs, ys)
    if any(c.denominator != 1 for c in poly):
        raise ArithmeticError("resultant interpolation produced non-integers")
    return [int(c) for c in poly]


# ---------------------------------------------------------------------------
# the public integer polynomial type
# ---------------------------------------------------------------------------

class IntPolynomial:
    """Immutable integer polynomial, constant term first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int]):
        cs = []
        for c in coeffs:
            if isinstance(c, Fraction):
                if c.denominator != 1:
                    raise ValueError("IntPolynomial coefficients must be integers")
                c = c.numerator
            cs.append(int(c))
        object.__setattr__(self, "coeffs", tuple(trim(cs)))

    def __setattr__(self, name, value):
        raise AttributeError("IntPolynomial is immutable")

    @classmethod
    def from_high(cls, *coeffs: int) -> "IntPolynomial":
        """Build from coefficients given leading term first."""
        return cls(reversed(coeffs))

    @classmethod
    def x_power_minus(cls, n: int, c: int) -> "IntPolynomial":
        return cls([-c] + [0] * (n - 1) + [1])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1 if self.coeffs else -1

    @property
    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def __iter__(self):
        return iter(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, i):
        return self.coeffs[i]

    def __eq__(self, other):
        if isinstance(other, IntPolynomial):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(("IntPolynomial", self.coeffs))

    def __lt__(self, other: "IntPolynomial"):
        return (self.degree, self.coeffs[::-1]) < (other.degree, other.coeffs[::-1])

    def __add__(self, other):
        return IntPolynomial(padd(self.coeffs, _as_list(other)))

    def __sub__(self, other):
        return IntPolynomial(psub(self.coeffs, _as_list(other)))

    def __neg__(self):
        return IntPolynomial([-c for c in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, int):
            return IntPolynomial(pscale(self.coeffs, other))
        return IntPolynomial(pmul(self.coeffs, _as_list(other)))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        return IntPolynomial(ppow(self.coeffs, e))

    def __call__(self, x):
        return peval(self.coeffs, x)

    def content(self) -> int:
        return content(self.coeffs)

    def primitive(self) -> "IntPolynomial":
        """Content 1 and positive leading coefficient."""
        return IntPolynomial(primitive_int(self.coeffs))

    def is_primitive(self) -> bool:
        return bool(self.coeffs) and self.content() == 1 and self.lead > 0

    def derivative(self) -> "IntPolynomial":
        return IntPolynomial(pderiv(self.coeffs))

    def reversed(self) -> "IntPolynomial":
        """x^d f(1/x)."""
        return IntPolynomial(self.coeffs[::-1])

    def negate_x(self) -> "IntPolynomial":
        """f(-x)."""
        return IntPolynomial([c if i % 2 == 0 else -c for i, c in enumerate(self.coeffs)])

    def scale_root(self, a: int) -> "IntPolynomial":
        """Primitive polynomial whose roots are a times the roots of self."""
        d = self.degree
        return IntPolynomial([c * a ** (d - i) for i, c in enumerate(self.coeffs)]).primitive()

    def divides(self, other: "IntPolynomial") -> bool:
        _, r = pdivmod(other.coeffs, self.coeffs)
        return not r

    def exact_div(self, other: "IntPolynomial") -> "IntPolynomial":
        return IntPolynomial(pexact_div_int(self.coeffs, other.coeffs))

    def __repr__(self):
        return f"IntPolynomial({list(self.coeffs)})"

    def __str__(self):
        return format_poly(self.coeffs)


def _as_list(p) -> list:
    if isinstance(p, IntPolynomial):
        return list(p.coeffs)
    if isinstance(p, int):
        return [p] if p else []
    return list(p)


def format_poly(coeffs: Sequence, var: str = "x") -> str:
    if not coeffs:
        return "0"
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = -c if c < 0 else c
        if i == 0:
            body = str(mag)
        else:
            mono = var if i == 1 else f"{var}^{i}"
            body = mono if mag == 1 else f"{mag}*{mono}"
        terms.append((sign, body))
    first_sign, first_body = terms[0]
    out = ("-" if first_sign == "-" else "") + first_body
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


def poly_discriminant(f: IntPolynomial) -> int:
    """disc(f) = (-1)^(d(d-1)/2) Res(f, f') / lead(f)."""
    d = f.degree
    if d < 1:
        raise ValueError("discriminant needs degree >= 1")
    if d == 1:
        return 1
    r = resultant(f.coeffs, pderiv(f.coeffs))
    q, rem = divmod(r, f.lead)
    assert rem == 0
    return -q if (d * (d - 1) // 2) % 2 else q


def squarefree_part_q(f: Sequence) -> list:
    """f / gcd(f, f') as a monic rational polynomial."""
    g = pgcd_q(f, pderiv(f))
    q, _ = pdivmod(f, g)
    return pmonic(q)


def is_squarefree(f: IntPolynomial) -> bool:
    if f.degree <= 0:
        return True
    return len(pgcd_q(f.coeffs, pderiv(f.coeffs))) == 1
