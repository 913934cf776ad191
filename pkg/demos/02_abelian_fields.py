"""Abelian fields from subgroups of (Z/fZ)^*.

A subgroup H of (Z/fZ)^* cuts out a subfield of the f-th cyclotomic field.
Its characters give the discriminant through the conductor-discriminant
formula, which we check against an independent p-maximal-order computation,
and its split primes are exactly those p with p mod f in H.
"""

from smallgen.abelian import AbelianSpec, character_group, corpus, defining_polynomial, field_conductor
from smallgen.numfield.discriminant import field_discriminant
from smallgen.numfield.field import NumberField
from smallgen.pipelines import verify_thm12_steps

# %% A few fields in detail
for f, gens in [(5, [4]), (5, []), (8, []), (7, [6]), (20, [3, 7, 9])]:
    spec = AbelianSpec.build(f, gens)
    rep = field_conductor(spec)
    g = defining_polynomial(rep.minimized)
    print(f"{str(spec):<28} d={spec.degree}  conductors={sorted(character_group(spec).conductors)}"
          f"  |D|={rep.abs_discriminant}  period poly: {g}")

# %% Conductor-discriminant formula across every field of conductor <= 30
agree = 0
specs = corpus(30)
for spec in specs:
    disc = field_discriminant(NumberField(defining_polynomial(spec), check=False))
    agree += disc.exact and abs(disc.value) == field_conductor(spec).abs_discriminant
print(f"\nconductor-discriminant agrees with the maximal order for {agree}/{len(specs)} fields")

# %% Split primes in (|D|^(1/2), 5|D|^(1/2)]
for f, gens in [(5, [4]), (5, []), (20, [3, 7, 9])]:
    r = verify_thm12_steps(AbelianSpec.build(f, gens))
    print(f"{str(r.spec):<22} interval ({r.interval[0].decimal(5)}, {r.interval[1].decimal(5)}]"
          f"  p = 1 mod f: {r.split_prime_congruence}  p mod f in H: {r.split_prime_sharp}")
