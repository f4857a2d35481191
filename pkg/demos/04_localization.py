"""Integrating equivariant classes by summing over fixed points.

For a class with restriction r_i at P_i the integral over M is
sum_i r_i / Lambda_i, where Lambda_i is the product of the weights at P_i.
Below the top degree the sum has to vanish.
"""

from fractions import Fraction

from hamsix import catalog
from hamsix.core import profile
from hamsix.invariants import NonVanishingNegativeDegree, RestrictionPolynomial, localize

v5 = catalog.make_v5()
prof = profile(v5)
print("Lambda_i:", [p.lambda_full for p in prof])

t = RestrictionPolynomial.monomial
print("integral of 1:", localize(v5, [1] * 4, 0))
print("moment map powers:", [str(sum(Fraction(p.moment ** d, q.lambda_full)
                                 for p, q in zip(v5.points, prof))) for d in range(3)])

# [omega]^3 via u|_{P_i} = -phi_i t
omega_cubed = localize(v5, [t(-p.moment, 1) ** 3 for p in v5.points], 6)
print("integral of [omega]^3:", omega_cubed)

# c1^3 and c1 c2 from the weight sums and second symmetric functions
c1 = [t(p.gamma, 1) for p in prof]
c2 = [t(p.sigma2, 2) for p in prof]
print("c1^3 =", localize(v5, [x ** 3 for x in c1], 6))
print("c1 c2 =", localize(v5, [x * y for x, y in zip(c1, c2)], 6))

try:
    localize(v5, [1, 0, 0, 0], 0)
except NonVanishingNegativeDegree as exc:
    print("a class supported at P0 alone is rejected:", exc)
