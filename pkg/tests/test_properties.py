"""Property-based checks of height identities and counting cross-validation."""

import math
from fractions import Fraction

from hypothesis import HealthCheck, given, settings, strategies as st

from smallgen.exactalg.factor import is_irreducible
from smallgen.exactalg.intervals import r_log
from smallgen.heights import Ordering, compare, height_algebraic, height_rational
from smallgen.northcott import best_integer_combination
from smallgen.numfield.field import NumberField, minimal_polynomial
from smallgen.numfield.trager import monic_model
from smallgen.primes import APSpec, pi_qa, pi_qa_direct

from conftest import P

SETTINGS = settings(max_examples=30, deadline=None, suppress_health_check=[HealthCheck.too_slow])

small_radical = st.tuples(st.integers(2, 3), st.integers(2, 30), st.integers(1, 30)).filter(
    lambda t: math.gcd(t[1], t[2]) == 1 and is_irreducible(P(t[2], *([0] * (t[0] - 1)), -t[1])))


def _radical(n, p, q):
    return P(q, *([0] * (n - 1)), -p)


@SETTINGS
@given(st.fractions(max_denominator=10 ** 6).filter(lambda r: r != 0))
def test_rational_height_inverse(r):
    assert compare(height_rational(r), height_rational(1 / r)) is Ordering.EQUAL
    assert height_rational(r).mahler.lower == max(abs(r.numerator), r.denominator)


@SETTINGS
@given(small_radical)
def test_height_of_inverse(t):
    n, p, q = t
    f = _radical(n, p, q)
    assert compare(height_algebraic(f), height_algebraic(f.reversed())) is Ordering.EQUAL


@SETTINGS
@given(small_radical, st.integers(2, 4))
def test_height_of_power(t, k):
    # H(alpha^k) = H(alpha)^k for alpha = (p/q)^(1/n); alpha^k has degree n / gcd(n, k)
    n, p, q = t
    f = _radical(n, p, q)
    g = monic_model(f)                      # root q * alpha
    K = NumberField(g)
    alpha = K.theta * Fraction(1, q)
    hk = height_algebraic(minimal_polynomial(alpha ** k))
    h = height_algebraic(f)
    lhs, rhs = hk.log_value, h.log_value * k
    assert lhs.overlaps(rhs)


@SETTINGS
@given(small_radical, st.integers(2, 13).filter(lambda m: int(math.isqrt(m)) ** 2 != m))
def test_combination_height_bound(t, m):
    n, p, q = t
    f_a = _radical(n, p, q)
    f_b = P(1, 0, -m)
    c = best_integer_combination(f_a, f_b)
    d = c.minpoly.degree
    bound = height_algebraic(f_a).log_value + height_algebraic(f_b).log_value
    assert not c.height.log_value > bound + r_log(2 * d * d)


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 60), st.integers(0, 59), st.integers(1, 200_000))
def test_pi_sieve_matches_direct(q, a, x):
    if math.gcd(a % q, q) != 1:
        a = 1
    spec = APSpec(q, a)
    assert pi_qa(x, spec) == pi_qa_direct(x, spec)
