"""
Strings and Hamiltonians are the same data
==========================================

Dipoles of a Krein-Langer string become intervals with angle 0 mod pi;
masses become jumps in the cotangent of the angle.
"""

from fractions import Fraction as F

from momentstrings import KreinLangerString, hamiltonian_to_kl, kl_to_hamiltonian, m_tilde_ratfun, hamiltonian_ratfun

string = KreinLangerString([(1, F(1, 2), 0), (2, -1, F(1, 3)), (F(1, 2), 0, 2)], F(3, 2))
H = kl_to_hamiltonian(string)

for iv in H.intervals:
    a = iv.angle
    what = "zero mod pi" if a.zero_mod_pi else f"cot = {a.cot}"
    print(f"length {iv.length}, window {a.pi_index}, {what}")

# the map is a bijection and the Weyl functions coincide exactly
print(hamiltonian_to_kl(H) == string)
print(m_tilde_ratfun(string) == hamiltonian_ratfun(H))

# the size of the string is the total finite length of H
print(string.size(), sum(H.lengths[:-1]))
