"""Counting primes and prime powers in arithmetic progressions.

pi(x; q, a) counts primes, psi(x; q, a) weights prime powers by log p.  We
compare them exactly (psi is kept as the integer exp(psi)), and look at the
least prime 1 mod q for small q.
"""

import math

from smallgen.primes import APSpec, check_pi_psi_sandwich, linnik_exponent_scan, pi_qa, pi_qa_direct

# %% Sieve versus direct testing
spec = APSpec(4, 1)
print("pi(10^6; 4, 1) =", pi_qa(10 ** 6, spec), "(sieve) =", pi_qa_direct(10 ** 6, spec), "(direct)")

# %% The pi/psi inequalities.  The upper one only holds once prime powers from
# primes outside the class are accounted for (pi(sqrt x) over all primes).
for x in (100, 1000, 10 ** 5):
    for q in (5, 8, 20):
        bad = [a for a in range(q) if math.gcd(a, q) == 1 and not check_pi_psi_sandwich(x, APSpec(q, a)).upper_ok]
        fixed = all(check_pi_psi_sandwich(x, APSpec(q, a)).upper_ok_all
                    for a in range(q) if math.gcd(a, q) == 1)
        print(f"x={x:<7} q={q:<3} class-restricted upper bound fails for a in {bad}; all-primes bound holds: {fixed}")

# %% Least prime 1 mod q, as an exponent of q
scan = linnik_exponent_scan(200)
worst = scan.max_ratio
print(f"\nq <= 200: largest log P(q,1)/log q = {worst.ratio.decimal(6)} at q = {worst.q} (P = {worst.least_prime})")
