"""
Companion EDS, Hankel identities and fast terms
===============================================

The companion elliptic divisibility sequence of a Somos 4 orbit lets one
jump straight to A[n] by index doubling.
"""

import time

from somos import SomosRecurrence, generate, t_invariant
from somos.eds import companion_of_somos4, divisibility_check, fast_somos_term, somos_hankel_check

alpha, beta, inits = 1, 1, [1, 1, 1, 1]
T = t_invariant(alpha, beta, inits)
W = companion_of_somos4(alpha, beta, T)

# terms live in Q[s]/(s^2 - alpha)
print([str(w) for w in W.terms(1, 10)])

# with s = 1 they are integers and W[n] divides W[m] whenever n divides m
vals = W.collapse(1, 1, 30)
print(vals[:12])
print("divisibility ok:", divisibility_check(vals).ok)

# the Hankel identities tie W to the orbit
orbit = generate(SomosRecurrence.somos4(alpha, beta), inits, lo=-15, hi=15)
zero = all(
    r == 0
    for m in range(1, 6)
    for n in range(-8, 9)
    for r in somos_hankel_check(orbit, W, m, n).values()
)
print("Hankel residuals all zero:", zero)

# single terms by doubling
rec = SomosRecurrence.somos4(1331, 119790)
for n in (100, 500, 2000):
    t0 = time.perf_counter()
    v = fast_somos_term(rec, [1, 3, 121, 177023], n)
    dt = time.perf_counter() - t0
    print(f"n = {n}: {v.bit_length()} bits in {dt:.3f}s")
