"""Acceptance suite: one test per criterion, each at its stated tolerance and time limit."""

import json
import math
import random
import subprocess
import sys
import time
from fractions import Fraction

import mpmath
import pytest
from sympy import jacobi_symbol

from smallgen.abelian import conductor_discriminant, corpus, defining_polynomial, field_conductor
from smallgen.exactalg.intervals import r_log
from smallgen.exactalg.arith import is_prime
from smallgen.heights import height_algebraic, height_of_root
from smallgen.northcott import delta, find_generator_below
from smallgen.numfield.discriminant import field_discriminant
from smallgen.numfield.field import NumberField
from smallgen.pipelines import HOLDS, exponent_table, quadratic_fields, verify_family
from smallgen.primes import APSpec, LinnikParameters, check_pi_psi_sandwich, evaluate_L_U, pi_qa, pi_qa_direct

from conftest import P


def _quadratic(m):
    return NumberField(P(1, 0, -m))


# 1 ---------------------------------------------------------------------------

@pytest.mark.parametrize("p, q, n", [(5, 7, 2), (3, 5, 2), (5, 7, 3), (3, 5, 3)])
def test_criterion_01_radical_height_identity(p, q, n):
    t = time.perf_counter()
    h = height_algebraic(P(q, *([0] * (n - 1)), -p))
    target = r_log(q) * Fraction(1, n)
    assert h.log_value.width < Fraction(1, 10 ** 12)
    # the enclosure of log H must contain (log q)/n: it overlaps a 256-bit enclosure of it
    # and the Mahler measure is exactly q
    assert h.log_value.overlaps(target)
    assert h.mahler.is_exact() and h.mahler.lower == q
    assert time.perf_counter() - t < 1


# 2 ---------------------------------------------------------------------------

def _mahler_quadratic(a, b, c):
    with mpmath.workdps(60):
        r = mpmath.polyroots([a, b, c], maxsteps=200, extraprec=200)
        return abs(a) * mpmath.fprod(max(1, abs(z)) for z in r)


def _brute_force_min(m, T):
    """Smallest M(f) over primitive quadratics f with M(f) <= T generating Q(sqrt m)."""
    best = None
    A, Bc = math.floor(T), math.floor(2 * T)
    for a in range(1, A + 1):
        for b in range(-Bc, Bc + 1):
            for c in range(-A, A + 1):
                if c == 0 or math.gcd(math.gcd(a, b), c) != 1:
                    continue
                D = b * b - 4 * a * c
                if D == 0 or D % m:
                    continue
                k2 = D // m
                k = math.isqrt(abs(k2))
                if k2 < 0 or k * k != k2:
                    continue
                M = _mahler_quadratic(a, b, c)
                if M <= T + mpmath.mpf(10) ** -30 and (best is None or M < best):
                    best = M
    return best


@pytest.mark.parametrize("m, expected", [(-1, 1), (-3, 1), (5, (1 + 5 ** 0.5) / 2), (-5, 3)])
def test_criterion_02_delta_exact_values(m, expected):
    t = time.perf_counter()
    cert = delta(_quadratic(m))
    assert cert.exhaustive
    assert abs(float(cert.height.mahler) - expected) < 1e-12
    oracle = _brute_force_min(m, math.ceil(expected) + 1)
    assert abs(oracle - mpmath.mpf(float(cert.height.mahler.mid))) < 1e-12
    assert time.perf_counter() - t < 60


# 3 ---------------------------------------------------------------------------

@pytest.fixture(scope="module")
def quadratic_deltas():
    return {(m, D): delta(_quadratic(m)) for m, D in quadratic_fields(200)}


def test_criterion_03_silverman_bound_quadratics(quadratic_deltas):
    violations = []
    for (m, D), cert in quadratic_deltas.items():
        assert cert.exhaustive, m
        # delta >= 2^(-1/2) |D|^(1/4)  <=>  4 M^2 >= |D| with M = delta^2
        M = cert.height.mahler
        if not (M * M * 4).lower >= abs(D):
            violations.append((m, D))
    assert violations == []
    assert len(quadratic_deltas) == 122


# 4 ---------------------------------------------------------------------------

def _kronecker_subgroup(D):
    f = abs(D)
    H = set()
    for a in range(1, f):
        if math.gcd(a, f) != 1:
            continue
        a_odd = a if a % 2 else a + f
        if jacobi_symbol(D % a_odd, a_odd) == 1:
            H.add(a)
    return H


def test_criterion_04_generator_below_split_prime():
    failures = []
    for m, D in quadratic_fields(200):
        H = _kronecker_subgroup(D)
        p = math.isqrt(abs(D)) + 1
        while not (is_prime(p) and D % p and p % abs(D) in H):
            p += 1
        r = find_generator_below(_quadratic(m), height_of_root(2, p))
        if not r.found:
            failures.append((m, p))
    assert failures == []


# 5, 6 ------------------------------------------------------------------------

@pytest.fixture(scope="module")
def abelian_corpus():
    return corpus(50)


def test_criterion_05_conductor_discriminant(abelian_corpus):
    named = {(5, frozenset({1})): 125, (8, frozenset({1})): 256, (5, frozenset({1, 4})): 5}
    seen = set()
    mismatches = []
    for spec in abelian_corpus:
        D = conductor_discriminant(spec)
        disc = field_discriminant(NumberField(defining_polynomial(spec), check=False))
        if not (disc.exact and abs(disc.value) == D):
            mismatches.append((str(spec), D, disc.value, disc.status))
        key = (spec.modulus, spec.subgroup)
        if key in named:
            assert D == named[key]
            seen.add(key)
    assert mismatches == []
    assert seen == set(named)


def test_criterion_06_conductor_inequality(abelian_corpus):
    for spec in abelian_corpus:
        r = field_conductor(spec)
        # f <= |D|^(2/d)  <=>  f^d <= |D|^2, exact integers
        assert r.conductor ** spec.degree <= r.abs_discriminant ** 2, str(spec)
        assert r.bound_ok


# 7 ---------------------------------------------------------------------------

def test_criterion_07_sandwich_grid():
    t = time.perf_counter()
    failures = []
    for x in (10 ** 2, 10 ** 3, 10 ** 4, 10 ** 5, 10 ** 6):
        for q in (3, 4, 5, 8, 12, 20):
            for a in range(q):
                if math.gcd(a, q) == 1:
                    r = check_pi_psi_sandwich(x, APSpec(q, a))   # raises if the two psi sums differ
                    if not r.passed:
                        failures.append((x, q, a))
    assert failures == []
    assert time.perf_counter() - t < 600


# 8 ---------------------------------------------------------------------------

def test_criterion_08_pi_cross_validation():
    spec = APSpec(4, 1)
    assert pi_qa(10 ** 6, spec) == pi_qa_direct(10 ** 6, spec)


# 9 ---------------------------------------------------------------------------

@pytest.mark.parametrize("args", [(1, 2, 5, 7), (1, 2, 3, 5), (1, 3, 5, 7)])
def test_criterion_09_family_sandwich(args):
    r = verify_family(*args)
    assert r.disc_K.exact
    assert r.lower_verdict == HOLDS and r.upper_verdict == HOLDS


# 10 --------------------------------------------------------------------------

def test_criterion_10_L_U():
    base = dict(c=1, c1=Fraction(1, 10), c2=3, c3=Fraction(1, 2))
    v = evaluate_L_U(LinnikParameters(U=13, **base))
    ref = r_log(26, 512) * 40
    assert v.lower <= ref.lower and ref.upper <= v.upper
    assert v.width < Fraction(1, 10 ** 9)
    rng = random.Random(20240601)
    for _ in range(100):
        c1 = Fraction(rng.randint(1, 99), 100)
        c2 = Fraction(rng.randint(101, 1000), 100)
        c3 = Fraction(rng.randint(1, 500), 100)
        c = Fraction(rng.randint(100, 500), 100)
        U1 = Fraction(rng.randint(1, 5000), 100)
        U2 = U1 + Fraction(rng.randint(1, 5000), 100)
        a = evaluate_L_U(LinnikParameters(c=c, c1=c1, c2=c2, c3=c3, U=U1))
        b = evaluate_L_U(LinnikParameters(c=c, c1=c1, c2=c2, c3=c3, U=U2))
        assert not a > b


# 11 --------------------------------------------------------------------------

def test_criterion_11_exponent_table():
    t4 = exponent_table(4)
    assert set(t4.family.values()) == {Fraction(1, 8), Fraction(1, 24)}
    assert t4.vw_threshold == Fraction(1, 12)
    assert exponent_table(9).dubickas == Fraction(5, 648)


# 12 --------------------------------------------------------------------------

SUITE = [
    ["height", "--spec", "{fam}"],
    ["delta", "--spec", "{q}"],
    ["split-prime", "--spec", "{q}", "--above", "5"],
    ["abelian-disc", "--spec", "{ab}"],
    ["thm12", "--spec", "{ab}", "--with-delta"],
    ["family", "--spec", "{fam}"],
    ["exponents", "--d", "12"],
    ["sandwich", "--x", "1000", "--q", "8"],
]


def _run_suite(tmp_path, paths, tag):
    outs = []
    for i, cmd in enumerate(SUITE):
        out = tmp_path / f"{tag}-{i}.json"
        argv = [a.format(**paths) for a in cmd] + ["--seed", "11", "--no-cache", "--out", str(out)]
        subprocess.run([sys.executable, "-m", "smallgen", *argv], check=True)
        doc = json.loads(out.read_text())
        doc.pop("timestamp")
        doc.pop("timings")
        outs.append(json.dumps(doc, sort_keys=True, indent=2).encode())
    return outs


def test_criterion_12_determinism(tmp_path):
    paths = {}
    for name, doc in {"q": {"type": "quadratic", "m": -5},
                      "ab": {"type": "abelian", "modulus": 7, "subgroup": [6]},
                      "fam": {"type": "radical-family", "m": 2, "n": 2, "p": 3, "q": 5}}.items():
        p = tmp_path / f"{name}.json"
        p.write_text(json.dumps(doc))
        paths[name] = str(p)
    assert _run_suite(tmp_path, paths, "a") == _run_suite(tmp_path, paths, "b")
