"""
Somos 4 orbits and their elliptic curves
========================================

Iterate a few Somos 4 orbits, compute the conserved quantity T and build
the Weierstrass curve that carries the orbit.
"""

from fractions import Fraction

from somos import SomosRecurrence, generate, somos4_invariants, curve_from_invariants
from somos.curve import ec_add, ec_mul, sequence_points
from somos.core import to_f_sequence

# the classic orbit: unit coefficients, four ones
rec = SomosRecurrence.somos4(1, 1)
orbit = generate(rec, [1, 1, 1, 1], lo=-4, hi=13)
for n, v in orbit.items():
    print(n, v)

# every window of four consecutive terms gives the same T
inv = somos4_invariants(1, 1, orbit.window(1, 4))
print("T =", inv.T, " lambda =", inv.lam, " I =", inv.I)
print({n: str(somos4_invariants(1, 1, orbit.window(n, 4)).T) for n in range(-4, 8)})

curve = curve_from_invariants(1, 1, inv.T)
print("g2 =", curve.g2, " g3 =", curve.g3, " j =", curve.j)

# P = (lambda, s) with s^2 = alpha, and Q comes from f0
P, Q = sequence_points(orbit, 1, 1)
print("P =", P.x, P.y, "  Q =", Q.x, Q.y)

# walking Q + nP along the curve recovers the f-sequence
f = to_f_sequence(orbit)
for n in range(-3, 9):
    R = ec_add(Q, ec_mul(n, P, curve), curve)
    print(n, R.x, "=", inv.lam - f[n])

# a bigger integral orbit with alpha = 11^3
alpha, beta = 1331, 119790
big = generate(SomosRecurrence.somos4(alpha, beta), [1, 3, 121, 177023], lo=-2, hi=8)
print(big.values())
inv = somos4_invariants(alpha, beta, big.window(1, 4))
print("T =", inv.T, " beta*T =", beta * inv.T)
print("j =", curve_from_invariants(alpha, beta, inv.T).j)

# fractional coefficients work the same way
o = generate(SomosRecurrence.somos4(Fraction(-1, 2), 1), [1, -2, 2, 1], hi=10)
print([str(v) for v in o.values()])
