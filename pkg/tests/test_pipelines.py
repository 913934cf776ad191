from fractions import Fraction

import pytest

from smallgen.abelian import AbelianSpec, corpus
from smallgen.exactalg.arith import is_prime
from smallgen.pipelines import (
    HOLDS,
    LABEL,
    composite_coprime_check,
    exponent_table,
    silverman_lower_bound,
    verify_family,
    verify_thm12_steps,
)

from conftest import P

S = AbelianSpec.build


def test_thm12_sqrt5():
    r = verify_thm12_steps(S(5, [4]), with_delta=True)
    assert r.label == LABEL
    assert r.abs_discriminant == 5 and r.conductor == 5
    assert r.split_prime_congruence == 11 and r.split_prime_sharp == 11
    assert r.delta_certificate.exhaustive
    assert r.delta_below_split_bound == HOLDS and r.delta_below_theorem_bound == HOLDS


def test_thm12_cyclotomic_5():
    r = verify_thm12_steps(S(5, []))
    assert r.abs_discriminant == 125 and r.split_prime_congruence == 31
    assert 11.18 < float(r.interval[0]) < 11.19 and 55.90 < float(r.interval[1]) < 55.91


def test_thm12_sqrt_minus5():
    r = verify_thm12_steps(S(20, [3, 7, 9]), with_delta=True)
    assert r.abs_discriminant == 20
    assert r.split_prime_congruence is None and r.split_prime_sharp == 7
    assert r.generator_search.found and r.generator_search.generator == P(2, -2, 3)
    assert r.conductor_bound_ok


def test_thm12_never_crashes_on_corpus_small_degree():
    for spec in corpus(24):
        r = verify_thm12_steps(spec)
        if r.split_prime_sharp is not None:
            assert r.split_prime_sharp % r.conductor in r.spec.subgroup
        if r.split_prime_congruence is not None:
            assert r.split_prime_congruence % r.conductor == 1


def test_thm12_split_bound_observed_small_fields():
    # quartic fields with large split primes need ~10^9 candidates; keep two cheap ones
    specs = [s for s in corpus(20) if s.degree <= 3] + [S(5, []), S(8, [])]
    for spec in specs:
        r = verify_thm12_steps(spec, with_delta=True)
        if r.split_prime_sharp is not None and r.delta_certificate.exhaustive:
            assert r.delta_below_split_bound == HOLDS, spec


@pytest.mark.parametrize("args, disc", [((1, 2, 5, 7), 140), ((1, 2, 3, 5), 60), ((1, 3, 5, 7), 33075),
                                        ((2, 2, 3, 5), 57600)])
def test_verify_family(args, disc):
    r = verify_family(*args)
    assert r.disc_K.exact and abs(r.disc_K.value) == disc
    assert r.height_alpha_exact and r.disc_M_divisible
    assert r.lower_verdict == HOLDS and r.upper_verdict == HOLDS
    assert r.degree == args[0] * args[1] == r.gamma_minpoly.degree


def test_verify_family_sqrt35_numbers():
    r = verify_family(1, 2, 5, 7)
    assert round(float(r.lower_bound), 3) == 1.720
    assert abs(float(r.upper_bound) - 16 * 140 ** 0.25) < 1e-9
    assert abs(float(r.height_gamma.height()) - 7 ** 0.5) < 1e-12


@pytest.mark.parametrize("args, msg", [((1, 2, 5, 11), "q = 11 >= 2p = 10"), ((5, 2, 5, 7), "m < p"),
                                       ((1, 2, 4, 7), "not prime"), ((1, 1, 5, 7), "n must be")])
def test_verify_family_rejects(args, msg):
    with pytest.raises(ValueError, match=msg):
        verify_family(*args)


def _admissible(qmax=50):
    primes = [p for p in range(2, qmax + 1) if is_prime(p)]
    for m, n in ((1, 2), (1, 3), (1, 4), (2, 2)):
        for p in primes:
            for q in primes:
                if m < p < q < 2 * p:
                    yield m, n, p, q


def test_family_sandwich_grid():
    checked = 0
    for args in _admissible():
        r = verify_family(*args)
        if r.disc_K.exact:
            assert (r.lower_verdict, r.upper_verdict) == (HOLDS, HOLDS), args
            checked += 1
    assert checked > 100


def test_silverman_lower_bound():
    assert abs(float(silverman_lower_bound(2, 20)) - 1.4953487812212205) < 1e-12
    one = silverman_lower_bound(2, 4)
    assert one.contains(1)
    assert abs(float(silverman_lower_bound(2, 5)) - 1.0573712634405641) < 1e-12
    with pytest.raises(ValueError):
        silverman_lower_bound(4, 100, F=(1, 1))


def test_exponent_table():
    t = exponent_table(4)
    assert t.b == 2 and t.vw_threshold == Fraction(1, 12)
    assert t.family == {2: Fraction(1, 8), 4: Fraction(1, 24)}
    assert exponent_table(9).dubickas == Fraction(5, 648)
    assert exponent_table(25).vw_threshold == Fraction(27, 7500)
    for d in range(2, 40):
        t = exponent_table(d)
        vals = [t.family[n] for n in sorted(t.family)]
        assert vals == sorted(vals, reverse=True) and len(set(vals)) == len(vals)
        assert t.ruppert_strong == t.silverman


def test_composite_coprime_check():
    r = composite_coprime_check(P(1, 0, -2), P(1, 0, -5))
    assert r.status == "checked" and r.degree == 4 and r.disc_K == 1600 and r.disc_identity_ok
    assert r.height_bound_ok
    assert composite_coprime_check(P(1, 0, -2), P(1, 0, -6)).status == "out-of-hypothesis"
    r = composite_coprime_check(P(1, 0, -5), P(1, 0, 3))
    assert r.disc_K == 225 and r.disc_identity_ok


COPRIME_PAIRS = [(a, b) for a, b in [(-1, 5), (-1, 13), (-1, -3), (2, 5), (2, -3), (2, 13), (5, -3),
                                     (5, -7), (5, -11), (5, 13), (-3, 13), (-3, 17), (-7, 13), (-7, 17),
                                     (-3, -7), (-11, 13), (13, 17), (-3, 2), (-11, 17), (-1, 17)]]


@pytest.mark.parametrize("a, b", COPRIME_PAIRS)
def test_composite_fixture_pairs(a, b):
    r = composite_coprime_check(P(1, 0, -a), P(1, 0, -b))
    assert r.coprime and r.degree_ok and r.disc_identity_ok
