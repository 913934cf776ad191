import math
from fractions import Fraction

import pytest

from smallgen.exactalg.intervals import RealEnclosure, r_log
from smallgen.primes import (
    APSpec,
    LinnikParameters,
    ScaledSqrt,
    check_pi_psi_sandwich,
    evaluate_eta,
    evaluate_L_U,
    evaluate_nu,
    least_prime_in_ap_above,
    linnik_exponent_scan,
    pi_qa,
    pi_qa_direct,
    prime_in_interval_ap,
    primes_upto,
    psi_qa,
)

FOOTNOTE = dict(c=1, c1=Fraction(1, 10), c2=3, c3=Fraction(1, 2))


def test_pi_qa():
    assert pi_qa(100, APSpec(4, 1)) == 11
    assert pi_qa(10, APSpec(3, 2)) == 2
    assert pi_qa(1, APSpec(7, 3)) == 0


def test_apspec_rejects_non_coprime():
    with pytest.raises(ValueError):
        APSpec(12, 3)


@pytest.mark.parametrize("x", [100, 10 ** 4, 54321, 2 * 10 ** 5])
@pytest.mark.parametrize("q", [3, 7, 10, 24, 30])
def test_sieve_agrees_with_direct(x, q):
    for a in range(q):
        if math.gcd(a, q) == 1:
            assert pi_qa(x, APSpec(q, a)) == pi_qa_direct(x, APSpec(q, a))


def test_residue_sum_identity():
    x = 10 ** 5
    total = len(primes_upto(x))
    for q in (4, 15, 30):
        s = sum(pi_qa(x, APSpec(q, a)) for a in range(q) if math.gcd(a, q) == 1)
        assert s == total - sum(1 for p in (2, 3, 5) if q % p == 0)


def test_psi_qa():
    assert psi_qa(10, APSpec(3, 1)).product() == 14
    assert psi_qa(1, APSpec(5, 2)).product() == 1
    assert psi_qa(9, APSpec(4, 1)).product() == 15
    assert abs(float(psi_qa(10, APSpec(3, 1)).log_enclosure()) - math.log(14)) < 1e-15


@pytest.mark.parametrize("x, q, a", [(100, 4, 1), (2, 1, 0), (10 ** 4, 12, 1)])
def test_sandwich(x, q, a):
    assert check_pi_psi_sandwich(x, APSpec(q, a)).passed


def test_least_prime_in_ap_above():
    assert least_prime_in_ap_above(APSpec(12, 1), 0) == 13
    assert least_prime_in_ap_above(APSpec(12, 1), 13) == 37
    assert least_prime_in_ap_above(APSpec(4, 1), 0) == 5


def test_prime_in_interval_ap():
    assert prime_in_interval_ap(10, 50, APSpec(4, 1)) == 13
    assert prime_in_interval_ap(13, 14, APSpec(12, 1)) is None
    lo, hi = ScaledSqrt(Fraction(1), Fraction(20)), ScaledSqrt(Fraction(5), Fraction(20))
    assert prime_in_interval_ap(lo, hi, APSpec(20, 1)) is None
    assert prime_in_interval_ap(lo, hi, APSpec(20, 1), residues={1, 3, 7, 9}) == 7


def test_L_U():
    v = evaluate_L_U(LinnikParameters(U=13, **FOOTNOTE))
    assert v.width < Fraction(1, 10 ** 9)
    assert abs(float(v) - 40 * math.log(26)) < 1e-12
    half = evaluate_L_U(LinnikParameters(U=Fraction(1, 2), **FOOTNOTE))
    assert half.is_exact() and half.lower == 12


def test_nu_and_eta():
    nu = evaluate_nu(LinnikParameters(U=13, **FOOTNOTE))
    assert nu.is_exact() and nu.lower == 40
    e2 = RealEnclosure(Fraction(7389056098930650, 10 ** 15), Fraction(7389056098930651, 10 ** 15))
    eta = evaluate_eta(LinnikParameters(U=13, q=e2, **FOOTNOTE))
    assert abs(float(eta) - 0.025) < 1e-12
    # 2 delta1 log q = 1/e with log q = 2
    delta1 = Fraction(1 / (4 * math.e))
    eta1 = evaluate_eta(LinnikParameters(U=13, q=e2, delta1=delta1, **FOOTNOTE))
    assert abs(float(eta1) - 0.125) < 1e-9


def test_linnik_parameters_validation():
    with pytest.raises(ValueError):
        LinnikParameters(c=1, c1=2, c2=3, c3=1, U=13)
    with pytest.raises(ValueError):
        LinnikParameters(c=Fraction(1, 2), c1=Fraction(1, 10), c2=3, c3=1, U=13)


def test_linnik_scan():
    rows = {r.q: r for r in linnik_exponent_scan(12).rows}
    assert (rows[3].least_prime, rows[4].least_prime, rows[12].least_prime) == (7, 5, 13)
    assert round(float(rows[4].ratio), 4) == 1.1610
    assert round(float(rows[12].ratio), 4) == 1.0322
    assert round(float(rows[3].ratio), 4) == 1.7712
    csv = linnik_exponent_scan(500).to_csv()
    lines = csv.strip().split("\n")
    assert lines[0] == "q,least_prime,ratio,probable_flag,millis" and len(lines) == 499


def test_sandwich_upper_bound_needs_all_small_primes():
    # psi(100; 5, 4) contains log 2 (n = 4), log 3 (n = 9) and log 7 (n = 49): prime powers
    # in the class whose primes are not, so the class-restricted upper bound fails
    r = check_pi_psi_sandwich(100, APSpec(5, 4))
    assert r.lower_ok and not r.upper_ok
    assert r.pi_sqrt_x_all == 4 and r.upper_ok_all


def test_sandwich_corrected_upper_bound_grid():
    for x in (10 ** 2, 10 ** 3, 10 ** 4, 10 ** 5):
        for q in range(2, 31):
            for a in range(q):
                if math.gcd(a, q) == 1:
                    r = check_pi_psi_sandwich(x, APSpec(q, a))
                    assert r.lower_ok and r.upper_ok_all, (x, q, a)
