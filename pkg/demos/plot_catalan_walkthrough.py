"""
From moments to strings: the semicircle law
===========================================

The semicircle law on [-2, 2] has Catalan numbers as even moments.  Every
model built from them is as simple as it gets.
"""

from momentstrings import (
    MomentSequence,
    classify,
    hankel_ledger,
    jacobi_from_moments,
    kl_from_moments,
    hamiltonian_from_moments,
    singularity_diagnostic,
)

s = MomentSequence([1, 0, 1, 0, 2, 0, 5, 0, 14, 0, 42, 0, 132, 0, 429, 0, 1430])
print(classify(s).summary())

# the Hankel ledger: odd shifted determinants vanish by symmetry
led = hankel_ledger(s)
print("Delta_1:", [str(led.delta(1, n)) for n in range(6)])

# Jacobi matrix: zero diagonal, unit off-diagonal
J = jacobi_from_moments(s)
print("a =", [str(x) for x in J.a])
print("b^2 =", [str(x) for x in J.b2])

# the Krein-Langer string carries only dipoles, one per unit length
string = kl_from_moments(s, depth=4)
for cell in string.cells:
    print("cell", cell.length, cell.mass, cell.dipole)

# Hamburger Hamiltonian: unit lengths, angles advancing by pi/2
H = hamiltonian_from_moments(s)
print("lengths", [str(l) for l in H.lengths])
print("angles / pi", [round(a.theta() / 3.141592653589793, 3) for a in H.angles])

# sizes keep growing: no sign of a regular string
rep = singularity_diagnostic(string)
print([str(t) for t in rep.trajectory], rep.verdict)
