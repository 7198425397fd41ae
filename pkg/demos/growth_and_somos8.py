"""
Height growth: quadratic for Somos 4, exponential for Somos 8
=============================================================
"""

import numpy as np

from somos import SomosRecurrence, generate
from somos.growth import fit_quadratic_growth, somos8_experiment

orbit = generate(SomosRecurrence.somos4(1331, 119790), [1, 3, 121, 177023], hi=60)
rep = fit_quadratic_growth(orbit, 10, 40)
print("log|A[n]| ~ C n^2 with C =", round(rep.constant, 4))

orbit = generate(SomosRecurrence.somos4(1, 1), [1, 1, 1, 1], hi=60)
print("Somos(4): C =", round(fit_quadratic_growth(orbit, 10, 60).constant, 4))

# Somos 8 from eight ones leaves the integers
s8 = somos8_experiment(n_max=45, fit_lo=25)
print("first non-integer term at n =", s8.first_nonintegral_index)
print("S[18] =", s8.orbit[18])

ns, h = np.array(s8.points).T
print("log h(S[n]) ~ K n with K =", round(s8.constant, 4))
print(np.column_stack([ns[-5:], np.log(h[-5:])]))
