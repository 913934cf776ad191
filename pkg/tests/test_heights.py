from fractions import Fraction

import pytest

from smallgen.heights import (
    Ordering,
    compare,
    compare_mahler_to,
    height_algebraic,
    height_element,
    height_of_root,
    height_rational,
    symmetry_class,
)
from smallgen.numfield.field import NumberField

from conftest import P


def _H(h, digits=12):
    return round(float(h.height()), digits)


def test_height_rational():
    h = height_rational(Fraction(1, 2))
    assert h.mahler.is_exact() and h.mahler.lower == 2
    z = height_rational(0)
    assert z.exact_one and z.log_value.is_exact() and z.log_value.lower == 0
    assert height_rational(Fraction(-7, 3)).mahler.lower == 7


def test_height_algebraic():
    h = height_algebraic(P(7, 0, -5))
    assert h.mahler.is_exact() and h.mahler.lower == 7
    assert _H(h) == round(7 ** 0.5, 12)
    c5 = height_algebraic(P(1, 1, 1, 1, 1))
    assert c5.exact_one and c5.log_value.lower == 0
    assert _H(height_algebraic(P(1, -1, -1)), 8) == 1.27201965


def test_height_algebraic_rejects_reducible():
    with pytest.raises(ValueError):
        height_algebraic(P(1, 0, -4))


def test_height_element():
    K = NumberField(P(1, 0, 5))
    alpha = (K.one() + K.theta) * Fraction(1, 2)
    h = height_element(alpha)
    assert h.minpoly == P(2, -2, 3) and h.mahler.lower == 3
    K35 = NumberField(P(1, 0, -35))
    assert height_element(K35.theta).mahler.lower == 35
    assert height_element(K.one()).exact_one


def test_compare():
    assert compare(height_algebraic(P(1, -1, -1)), height_rational(2)) is Ordering.LESS
    a = height_algebraic(P(2, -2, 3))
    assert compare(a, height_algebraic(P(2, -2, 3))) is Ordering.EQUAL
    # sqrt3 and 1/sqrt3 have the same height (reversal symmetry)
    assert compare(height_algebraic(P(1, 0, -3)), height_algebraic(P(3, 0, -1))) is Ordering.EQUAL
    # sqrt3 versus (1 + sqrt-5)/2: both have H = 3^(1/2), different fields
    assert compare(height_algebraic(P(1, 0, -3)), a) is Ordering.EQUAL
    assert compare(height_rational(2), height_algebraic(P(1, -1, -1))) is Ordering.GREATER


def test_compare_mahler_to():
    h = height_algebraic(P(2, -2, 3))
    assert compare_mahler_to(h, 3) is Ordering.EQUAL
    assert compare_mahler_to(h, Fraction(301, 100)) is Ordering.LESS


def test_height_of_root():
    h = height_of_root(2, 7)
    assert h.mahler.lower == 7 and h.degree == 2


def test_symmetry_class():
    f = P(2, -2, 3)
    assert symmetry_class(f) == symmetry_class(f.negate_x()) == symmetry_class(f.reversed())
