from fractions import Fraction

import pytest

from smallgen.exactalg.arith import euler_phi, factorint, is_prime, primality
from smallgen.exactalg.factor import factor_over_Q, is_irreducible
from smallgen.exactalg.finite_field import factor_mod_p
from smallgen.exactalg.intervals import RealEnclosure, r_log, r_sqrt
from smallgen.exactalg.polynomial import IntPolynomial, poly_discriminant, resultant
from smallgen.exactalg.roots import complex_roots, is_kronecker, mahler_measure

from conftest import P


@pytest.mark.parametrize("f, disc", [(P(1, 0, -5), 20), (P(1, 0, 0, -2), -108), (P(1, 1, -1), 5)])
def test_poly_discriminant(f, disc):
    assert poly_discriminant(f) == disc


def test_cubic_discriminant_formula_matches_resultant():
    # -4a^3 - 27b^2 for x^3 + a x + b
    for a, b in [(0, -2), (-1, -1), (3, 5), (-7, 6)]:
        f = P(1, 0, a, b)
        assert poly_discriminant(f) == -4 * a ** 3 - 27 * b ** 2
        assert resultant(f.coeffs, f.derivative().coeffs) == -poly_discriminant(f)


def _fmp(f, p):
    return sorted((tuple(g.coeffs), e) for g, e in factor_mod_p(f, p))


def test_factor_mod_p():
    assert _fmp(P(1, 0, -2), 7) == sorted([((-3 % 7, 1), 1), ((-4 % 7, 1), 1)])
    assert _fmp(P(1, 0, -2), 5) == [((3, 0, 1), 1)]
    assert _fmp(P(1, 0, 1), 2) == [((1, 1), 2)]


def _fq(f):
    c, fs = factor_over_Q(f)
    return c, sorted((tuple(g.coeffs), e) for g, e in fs)


def test_factor_over_Q():
    assert _fq(P(1, 0, 0, 0, -4)) == (1, sorted([((-2, 0, 1), 1), ((2, 0, 1), 1)]))
    assert _fq(P(1, 0, 0, 0, 1)) == (1, [((1, 0, 0, 0, 1), 1)])
    assert _fq(P(6, -5, 1)) == (1, sorted([((-1, 2), 1), ((-1, 3), 1)]))


def test_factor_over_Q_reconstructs_product():
    f = P(3, 0, -1) * P(1, 1, 1) * P(1, 1, 1) * P(2, -7)
    c, fs = factor_over_Q(f)
    prod = IntPolynomial([c])
    for g, e in fs:
        for _ in range(e):
            prod = prod * g
    assert prod == f
    assert all(is_irreducible(g) for g, _ in fs)


def test_complex_roots_boxes():
    roots = complex_roots(P(1, 0, 1), Fraction(1, 10 ** 20))
    assert len(roots) == 2
    assert sorted(r.as_complex().imag for r in roots) == pytest.approx([-1, 1])
    assert all(r.contains_point(Fraction(0), Fraction(s)) for r, s in zip(
        sorted(roots, key=lambda r: r.center_im), (-1, 1)))
    golden = sorted(r.as_complex().real for r in complex_roots(P(1, -1, -1)))
    assert golden == pytest.approx([-0.6180339887498949, 1.618033988749895])
    cube = complex_roots(P(1, 0, 0, -2))
    real = [r for r in cube if r.is_real()]
    assert len(real) == 1 and real[0].as_complex().real == pytest.approx(2 ** (1 / 3))


def test_mahler_measure():
    m = mahler_measure(P(1, -1, -1), Fraction(1, 10 ** 30))
    # phi = 1.6180339887498948482045868...
    assert Fraction(16180339887498948482, 10 ** 19) < m.lower
    assert m.upper < Fraction(16180339887498948483, 10 ** 19)
    assert m.width < Fraction(1, 10 ** 30)
    one = mahler_measure(P(1, 0, 0, 0, 0, -1))
    assert one.is_exact() and one.lower == 1
    two = mahler_measure(P(2, -1))
    assert two.is_exact() and two.lower == 2


def test_kronecker():
    assert is_kronecker(P(1, 1, 1, 1, 1))
    assert not is_kronecker(P(1, -1, -1))


def test_primality_and_factoring():
    assert [n for n in range(30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert is_prime(2 ** 61 - 1) and not is_prime(2 ** 61 + 1)
    assert primality(2 ** 89 - 1) == (True, True)       # beyond 2^64: probable flag
    assert factorint(-360) == {2: 3, 3: 2, 5: 1}
    big = (2 ** 31 - 1) * (2 ** 61 - 1)
    assert factorint(big) == {2 ** 31 - 1: 1, 2 ** 61 - 1: 1}
    assert [euler_phi(n) for n in (1, 20, 13)] == [1, 8, 12]


def test_enclosures():
    l3 = r_log(3)
    assert 0 < l3.width < Fraction(1, 10 ** 60)
    assert Fraction(1098612288668109691, 10 ** 18) < l3.lower < l3.upper < Fraction(1098612288668109692, 10 ** 18)
    s = r_sqrt(Fraction(9, 4))
    assert s.is_exact() and s.lower == Fraction(3, 2)
    assert r_sqrt(2) * r_sqrt(2) > RealEnclosure.exact(Fraction(19999, 10000))
