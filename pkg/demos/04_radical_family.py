"""Heights in the fields Q(2^(1/m), (p/q)^(1/n)).

For primes m < p < q < 2p the number (p/q)^(1/n) has height exactly q^(1/n),
and some integer combination gamma with 2^(1/m) generates the compositum K.
Its height sits between two powers of the discriminant of K.
"""

from smallgen.pipelines import verify_family

print(f"{'(m,n,p,q)':<14} {'d':>2} {'|D_K|':>14}  {'lower':>10} {'H(gamma)':>10} {'upper':>10}  verdicts")
for args in [(1, 2, 5, 7), (1, 2, 3, 5), (1, 3, 5, 7), (2, 2, 3, 5), (2, 3, 3, 5), (1, 2, 7, 11)]:
    r = verify_family(*args)
    print(f"{str(args):<14} {r.degree:>2} {abs(r.disc_K.value):>14}  {r.lower_bound.decimal(6):>10} "
          f"{r.height_gamma.height().decimal(6):>10} {r.upper_bound.decimal(6):>10}  "
          f"{r.lower_verdict}/{r.upper_verdict}  ({r.disc_K_method})")
