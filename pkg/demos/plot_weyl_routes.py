"""
Six roads to one Weyl function
==============================

A measure with five atoms, its first moments, and every route to the
truncated Weyl function m_n(z).  They agree to rounding.
"""

from fractions import Fraction as F

from momentstrings import DiscreteMeasure, moments_from_measure
from momentstrings.routes import RouteSet, max_relative_deviation

mu = DiscreteMeasure([(-3, F(1, 5)), (F(-1, 2), F(1, 3)), (1, F(1, 4)), (2, F(1, 7)), (F(9, 2), F(1, 9))])
s = moments_from_measure(mu, 11)

for n in (2, 3, 5):
    routes = RouteSet(s, n)
    vals = routes.evaluate(-1 + 1j)
    print(f"n = {n}")
    for name, v in vals.items():
        print(f"   {name:<11} {v:.15f}")
    print("   spread", max_relative_deviation(vals.values()))

# at full rank the truncation is exact: compare with the atoms directly
z = -1 + 1j
print(sum(complex(float(w)) / (float(x) - z) for x, w in mu.atoms))
