"""
Peeling a rational Herglotz function
====================================

The Euclidean algorithm splits -l z off the reciprocal and omega + upsilon z
off the remainder, until nothing is left.
"""

from fractions import Fraction as F

from momentstrings import Polynomial, RationalFunction, euclid_decompose
from momentstrings.errors import NotHerglotzError


def cauchy(atoms):
    f = RationalFunction(Polynomial())
    for x, w in atoms:
        f = f + RationalFunction(Polynomial([w]), Polynomial([x, -1]))
    return f


f = cauchy([(-1, F(1, 2)), (1, F(1, 2))])
print(f)
print(euclid_decompose(f))

g = cauchy([(0, F(1, 3)), (2, F(1, 3)), (5, F(1, 3))])
sg = euclid_decompose(g)
for cell in sg.cells:
    print(cell)
# the atom at 0 shows up as a finite tail
print("tail", sg.tail)

# a negative weight: somewhere a length or dipole comes out with the wrong sign
try:
    euclid_decompose(cauchy([(0, 1), (3, F(-1, 2))]))
except NotHerglotzError as exc:
    print("rejected:", exc)
