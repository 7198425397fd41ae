"""Integer points on the quartic and quintic surfaces carried by Somos orbits.

Consecutive windows of a Somos 4 (resp. 5) orbit are solutions of a
homogeneous quartic (resp. quintic) equation whose coefficients are the
recurrence coefficients and the conserved quantity.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from .core import SomosRecurrence, generate
from .curve import j_tilde, t_invariant
from .errors import Periodic
from .rings import format_rational, normalize

__all__ = [
    "QuarticInstance",
    "QuinticInstance",
    "quartic_residual",
    "quintic_residual",
    "Solution",
    "stream_quartic",
    "stream_quintic",
    "projective_key",
]


@dataclass(frozen=True)
class QuarticInstance:
    """``s^2 v^2 + alpha (s u^3 + t^3 v) + beta t^2 u^2 = T s t u v``."""

    alpha: object
    beta: object
    T: object

    @classmethod
    def from_orbit_data(cls, alpha, beta, inits):
        return cls(normalize(alpha), normalize(beta), t_invariant(alpha, beta, inits))


@dataclass(frozen=True)
class QuinticInstance:
    """``(s w + alpha u^2)(s v^2 + t^2 w) + beta t u^3 v = J s t u v w``."""

    alpha: object
    beta: object
    J: object

    @classmethod
    def from_orbit_data(cls, alpha, beta, inits):
        return cls(normalize(alpha), normalize(beta), j_tilde(alpha, beta, inits).J)


def quartic_residual(inst, point):
    s, t, u, v = point
    lhs = s * s * v * v + inst.alpha * (s * u ** 3 + t ** 3 * v) + inst.beta * t * t * u * u
    return normalize(lhs - inst.T * s * t * u * v)


def quintic_residual(inst, point):
    s, t, u, v, w = point
    lhs = (s * w + inst.alpha * u * u) * (s * v * v + t * t * w) + inst.beta * t * u ** 3 * v
    return normalize(lhs - inst.J * s * t * u * v * w)


@dataclass(frozen=True)
class Solution:
    index: int  # orbit index of the first entry
    window: tuple
    gcd: int
    residual: object

    @property
    def primitive(self):
        return self.gcd == 1

    def to_json(self):
        return {
            "index": self.index,
            "window": [format_rational(x) for x in self.window],
            "gcd": str(self.gcd),
            "residual": format_rational(self.residual),
        }


def _content(window):
    g = 0
    for x in window:
        g = gcd(g, int(x))
    return g


def projective_key(window):
    """Window up to a common rational factor: integral, coprime, first nonzero > 0."""
    fr = [Fraction(x) for x in window]
    den = lcm(*(f.denominator for f in fr))
    ints = [int(f * den) for f in fr]
    g = _content(ints) or 1
    ints = [x // g for x in ints]
    lead = next((x for x in ints if x), 0)
    if lead < 0:
        ints = [-x for x in ints]
    return tuple(ints)


def _stream(rec, inits, count, primitive_only, residual, inst, guard):
    k = rec.order
    limit = max(count, guard)
    hi = limit + k
    orbit = generate(rec, inits, hi=hi)
    seen = {}
    out = []
    n = 1
    while len(out) < count:
        if n + k - 1 > orbit.hi:
            orbit = generate(rec, inits, hi=2 * orbit.hi)
        window = tuple(orbit[n:n + k])
        if n <= limit:
            key = projective_key(window)
            if key in seen:
                raise Periodic(n - seen[key], seen[key])
            seen[key] = n
        integral = all(Fraction(x).denominator == 1 for x in window)
        g = _content(window) if integral else 0
        sol = Solution(n, window, g, residual(inst, window))
        if not primitive_only or sol.primitive:
            out.append(sol)
        n += 1
    return out


def stream_quartic(inst, inits, count, primitive_only=False, guard=64):
    """``count`` windows ``(A[n], .., A[n+3])`` starting at ``n = 1``.

    Raises :class:`Periodic` if a window repeats (up to scaling) within the
    first ``max(count, guard)`` windows.
    """
    rec = SomosRecurrence.somos4(inst.alpha, inst.beta)
    return _stream(rec, inits, count, primitive_only, quartic_residual, inst, guard)


def stream_quintic(inst, inits, count, primitive_only=False, guard=64):
    """Quintic analogue of :func:`stream_quartic` over Somos 5 windows."""
    rec = SomosRecurrence.somos5(inst.alpha, inst.beta)
    return _stream(rec, inits, count, primitive_only, quintic_residual, inst, guard)
