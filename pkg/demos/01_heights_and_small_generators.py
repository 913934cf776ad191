"""Heights of algebraic numbers and the smallest generator of a quadratic field.

The Weil height of an algebraic number of degree d is H = M(f)^(1/d), with M
the Mahler measure of its primitive minimal polynomial f.  Every number field
K has a generator of least height, delta(K); we find it by enumerating the
finite box of integer polynomials allowed by a height bound.
"""

from fractions import Fraction

from smallgen.exactalg.polynomial import IntPolynomial
from smallgen.heights import compare, height_algebraic, height_rational
from smallgen.northcott import delta
from smallgen.numfield.field import NumberField
from smallgen.pipelines import quadratic_fields, silverman_lower_bound

P = IntPolynomial.from_high

# %% Heights are exact where they can be
for label, h in [("1/2", height_rational(Fraction(1, 2))),
                 ("(5/7)^(1/2)", height_algebraic(P(7, 0, -5))),
                 ("zeta_5", height_algebraic(P(1, 1, 1, 1, 1))),
                 ("golden ratio", height_algebraic(P(1, -1, -1)))]:
    print(f"H({label:>12}) = {h.height().decimal(15):<18} M = {h.mahler.decimal(10)}")

# sqrt 3 and (1 + sqrt -5)/2 live in different fields but have the same height
print("H(sqrt3) vs H((1+sqrt-5)/2):", compare(height_algebraic(P(1, 0, -3)),
                                              height_algebraic(P(2, -2, 3))).value)

# %% delta for a few quadratic fields, against the lower bound 2^(-1/2) |D|^(1/4)
print(f"\n{'m':>5} {'D':>5}  {'generator':<18} {'delta':>10} {'lower bound':>12}")
for m, D in quadratic_fields(40)[:12]:
    cert = delta(NumberField(P(1, 0, -m)))
    lb = silverman_lower_bound(2, abs(D))
    print(f"{m:>5} {D:>5}  {str(cert.generator):<18} {cert.height.height().decimal(8):>10} "
          f"{lb.decimal(8):>12}  {'exhaustive' if cert.exhaustive else 'partial'}")
