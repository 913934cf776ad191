from fractions import Fraction

import pytest

from smallgen.heights import Ordering, compare, height_algebraic, height_of_root, height_rational, symmetry_class
from smallgen.northcott import (
    EnumerationBudget,
    best_integer_combination,
    delta,
    enumerate_candidates,
    find_generator_below,
)
from smallgen.numfield.field import NumberField
from smallgen.numfield.trager import has_root_in_field
from smallgen.pipelines import quadratic_fields

from conftest import P


def test_enumerate_degree_one():
    polys = list(enumerate_candidates(1, 2))
    assert P(2, -1) in polys and P(1, -2) in polys
    assert P(3, -1) not in polys
    assert len(polys) == len(set(polys))


def test_enumerate_degree_two_height_one():
    assert set(enumerate_candidates(2, 1)) == {P(1, 1, 1), P(1, 0, 1), P(1, -1, 1)}


def test_enumerate_contains_boundary_case():
    assert P(2, -2, 3) in set(enumerate_candidates(2, height_of_root(2, 3)))


def test_enumerate_order_is_lexicographic():
    polys = list(enumerate_candidates(2, Fraction(3, 2)))
    keys = [tuple(reversed(f.coeffs)) for f in polys]
    assert keys == sorted(keys)


def test_enumerate_rejects_small_bound():
    with pytest.raises(ValueError):
        list(enumerate_candidates(2, Fraction(1, 2)))


@pytest.mark.parametrize("m, gen, mahler", [(-1, P(1, 0, 1), 1), (-3, P(1, 1, 1), 1),
                                            (-5, P(2, -2, 3), 3), (35, P(5, 0, -7), 7)])
def test_delta_quadratic(m, gen, mahler):
    cert = delta(NumberField(P(1, 0, -m)))
    assert cert.exhaustive
    assert symmetry_class(cert.generator) == symmetry_class(gen)
    assert compare(cert.height, height_algebraic(gen)) is Ordering.EQUAL
    assert cert.height.mahler.contains(mahler)


def test_delta_sqrt5_is_golden():
    cert = delta(NumberField(P(1, 0, -5)))
    assert cert.exhaustive and cert.generator in (P(1, -1, -1), P(1, 1, -1))


def test_delta_stable_under_larger_start():
    K = NumberField(P(1, 0, 5))
    a = delta(K)
    b = delta(K, start_B=2 * a.bound_B)
    assert symmetry_class(a.generator) == symmetry_class(b.generator)


def test_certificate_generator_lies_in_field():
    K = NumberField(P(1, 0, -7))
    cert = delta(K)
    assert cert.generator.degree == 2 and has_root_in_field(cert.generator, K)


def test_only_roots_of_unity_fields_have_delta_one():
    ones = [m for m, D in quadratic_fields(50) if delta(NumberField(P(1, 0, -m))).height.exact_one]
    assert sorted(ones) == [-3, -1]


def test_budget_exhaustion_is_reported():
    K = NumberField(P(1, 0, -97))
    cert = delta(K, EnumerationBudget(max_candidates=10))
    assert not cert.exhaustive and has_root_in_field(cert.generator, K)


def test_find_generator_below():
    r = find_generator_below(NumberField(P(1, 0, 5)), height_of_root(2, 7))
    assert r.found and r.generator == P(2, -2, 3)
    r = find_generator_below(NumberField(P(1, 0, -5)), height_rational(1))
    assert not r.found and r.exhaustive
    r = find_generator_below(NumberField(P(1, 0, 1)), height_rational(1))
    assert r.found and r.generator == P(1, 0, 1)


def test_find_generator_below_monotone():
    K = NumberField(P(1, 0, -6))
    prev = None
    for T in (5, 7, 12, 30):
        r = find_generator_below(K, height_of_root(2, T))
        if r.found:
            if prev is not None:
                assert compare(r.height, prev) is not Ordering.GREATER
            prev = r.height


def test_best_integer_combination():
    c = best_integer_combination(P(1, 0, -2), P(1, 0, -3))
    assert (c.a, c.b) == (1, 1) and c.minpoly == P(1, 0, -10, 0, 1)
    c = best_integer_combination(P(1, 0, 0, -2), P(3, -2))
    assert (c.a, c.b) == (1, 0)
    c = best_integer_combination(P(1, 0, -2), P(7, 0, -5))
    assert c.minpoly.degree == 4
    bound = 2 * 16 * 2 ** 0.5 * 7 ** 0.5
    assert float(c.height.height()) <= bound
