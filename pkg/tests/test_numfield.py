from fractions import Fraction

import pytest

from smallgen.exactalg.polynomial import poly_discriminant
from smallgen.numfield.discriminant import dedekind_p_maximal, field_discriminant, splits_completely
from smallgen.numfield.field import NumberField, element_arithmetic, minimal_polynomial
from smallgen.numfield.round2 import p_maximal_order
from smallgen.numfield.trager import fields_isomorphic, has_root_in_field, minpoly_of_combination

from conftest import P


@pytest.fixture(scope="module")
def Q2():
    return NumberField(P(1, 0, -2))


def test_element_arithmetic(Q2):
    t = Q2.theta
    assert element_arithmetic(Q2.one() + t, Q2.one() - t, "mul") == Q2.rational(-1)
    assert t.inverse() == t * Fraction(1, 2)
    with pytest.raises(ZeroDivisionError):
        Q2.zero().inverse()


def test_minimal_polynomial(Q2):
    assert minimal_polynomial(Q2.one() + Q2.theta) == P(1, -2, -1)
    assert minimal_polynomial(Q2.rational(Fraction(3, 2))) == P(2, -3)
    K3 = NumberField(P(1, 0, 0, -2))
    assert minimal_polynomial(K3.theta) == P(1, 0, 0, -2)


def test_has_root_in_field(Q2):
    assert has_root_in_field(P(1, 0, -2), Q2)
    assert not has_root_in_field(P(1, 0, -3), Q2)
    assert has_root_in_field(P(1, -2, -1), Q2)


def test_fields_isomorphic():
    assert fields_isomorphic(P(1, 0, -2), P(1, 0, -8))
    assert not fields_isomorphic(P(1, 0, -2), P(1, 0, -3))
    assert not fields_isomorphic(P(1, 0, 0, -2), P(1, 0, 0, -3))
    # x^3 - 2 and x^3 - 4 define the same field (4^(1/3) = 2^(2/3))
    assert fields_isomorphic(P(1, 0, 0, -2), P(1, 0, 0, -4))


def test_minpoly_of_combination():
    assert minpoly_of_combination(P(1, 0, -2), P(1, 0, -3), 1, 1) == P(1, 0, -10, 0, 1)
    f = P(1, 0, 0, -2)
    assert minpoly_of_combination(f, P(1, 0, -3), 1, 0) == f
    g = minpoly_of_combination(P(1, 0, -2), P(7, 0, -5), 1, 1)
    # sqrt2 + sqrt(5/7): (x^2 - 2 - 5/7)^2 = 40/7 x^2 ... -> 49x^4 - 266x^2 + 81
    assert g.degree == 4 and g.is_primitive()
    assert g == P(49, 0, -266, 0, 81)


def test_dedekind():
    assert not dedekind_p_maximal(NumberField(P(1, 0, -5)), 2)
    assert dedekind_p_maximal(NumberField(P(1, 0, 5)), 2)
    assert dedekind_p_maximal(NumberField(P(1, 0, -2)), 7)


@pytest.mark.parametrize("f, disc", [(P(1, 0, 5), -20), (P(1, 0, -5), 5), (P(1, 0, 0, -2), -108),
                                     (P(1, 0, -12), 12), (P(1, 0, 0, 0, 1), 256)])
def test_field_discriminant(f, disc):
    r = field_discriminant(NumberField(f))
    assert r.exact and r.value == disc


def test_round2_common_index_divisor():
    # Q(i, sqrt5) has disc 400 and Z[sqrt5 + i] is not 2-maximal
    K = NumberField(P(1, 0, -8, 0, 36))        # minpoly of sqrt5 + i
    r = field_discriminant(K)
    assert r.exact and abs(r.value) == 400
    order = p_maximal_order(K, 2)
    v2 = 0
    D = poly_discriminant(K.defining_poly)
    while D % 2 == 0:
        D //= 2
        v2 += 1
    assert order.disc_valuation(v2) == 4


def test_splits_completely(Q2):
    assert splits_completely(Q2, 7)
    assert not splits_completely(Q2, 5)
    assert not splits_completely(Q2, 2)
    # index prime: Q(sqrt5) with the non-maximal order Z[sqrt5]; 11 splits, 2 is inert
    K = NumberField(P(1, 0, -5))
    assert splits_completely(K, 11) and not splits_completely(K, 2)
