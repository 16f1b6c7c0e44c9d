"""
Watching for divergence
=======================

Finite prefixes cannot decide determinacy; the partial sizes of the
string only hint at it.  The Gaussian problem is determinate, yet its terms
shrink slowly enough that the trend test still reads "regular-so-far".
"""

from momentstrings import MomentSequence, kl_from_moments, singularity_diagnostic, moments_from_measure, DiscreteMeasure
from momentstrings.strings import max_kl_depth


def gaussian(count):
    out = []
    for k in range(count):
        v = 0 if k % 2 else 1
        for j in range(k - 1, 0, -2):
            v *= j
        out.append(v)
    return out


s = MomentSequence(gaussian(25))
string = kl_from_moments(s, max_kl_depth(s))
rep = singularity_diagnostic(string)
print([round(float(t), 3) for t in rep.trajectory])
print(rep.verdict)

# a finite measure: the string ends, the problem is determinate
s = moments_from_measure(DiscreteMeasure([(0, 1), (1, 1), (3, 1)]), 7)
rep = singularity_diagnostic(kl_from_moments(s))
print(rep.verdict, rep.determinate)
