"""Height growth of Somos orbits.

Somos 4/5 orbits attached to non-torsion points grow like ``log|A[n]| ~ C n^2``.
The Somos 8 orbit with unit data is not Laurent: it leaves the integers and
its logarithmic heights ``h`` grow exponentially, ``log h(S[n]) ~ K n``.

This is the only module that uses floating point, and only on logarithms of
exact data.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .core import SomosRecurrence, generate
from .errors import InsufficientData, ZeroValue
from .rings import is_integral

__all__ = ["log_abs", "log_height", "GrowthReport", "fit_quadratic_growth", "fit_linear", "somos8_experiment"]


def log_abs(n):
    """Natural log of ``|n|`` for a nonzero integer of any size."""
    n = abs(int(n))
    if n == 0:
        raise ZeroValue("log of zero")
    bits = n.bit_length()
    if bits < 1000:
        return math.log(n)
    shift = bits - 64
    return math.log(n >> shift) + shift * math.log(2)


def log_height(x):
    """Naive logarithmic height ``log max(|p|, q)`` of ``x = p/q`` in lowest terms."""
    if x == 0:
        raise ZeroValue("height of zero")
    p, q = int(x.numerator), int(x.denominator)
    return log_abs(max(abs(p), q))


@dataclass
class GrowthReport:
    model: str  # "C n^2" or "K n"
    constant: float
    intercept: float
    sample: tuple  # (lo, hi)
    residual_max: float
    points: list = field(default_factory=list)  # (n, value)
    first_nonintegral_index: object = None

    def to_json(self):
        out = {
            "model": self.model,
            "constant": repr(self.constant),
            "intercept": repr(self.intercept),
            "sample": list(self.sample),
            "residual_max": repr(self.residual_max),
        }
        if self.first_nonintegral_index is not None:
            out["first_nonintegral_index"] = str(self.first_nonintegral_index)
        return out

    def csv_rows(self):
        return [("n", "log_height")] + [(str(n), repr(v)) for n, v in self.points]


def fit_linear(xs, ys):
    """Ordinary least squares ``y = a x + b``; returns ``(a, b, max |residual|)``."""
    X = np.column_stack([np.asarray(xs, dtype=float), np.ones(len(xs))])
    y = np.asarray(ys, dtype=float)
    (a, b), *_ = np.linalg.lstsq(X, y, rcond=None)
    res = y - X @ np.array([a, b])
    return float(a), float(b), float(np.max(np.abs(res)))


def fit_quadratic_growth(orbit, lo, hi):
    """Fit ``log|A[n]| = C n^2 + c0`` over ``lo <= n <= hi``."""
    ns = list(range(lo, hi + 1))
    if len(ns) < 10:
        raise InsufficientData("need at least 10 samples")
    ys = [log_height(orbit[n]) if not is_integral(orbit[n]) else log_abs(orbit[n]) for n in ns]
    C, c0, r = fit_linear([n * n for n in ns], ys)
    return GrowthReport("C n^2", C, c0, (lo, hi), r, list(zip(ns, ys)))


def somos8_experiment(n_max=45, fit_lo=25):
    """Iterate Somos 8 from eight ones and fit ``log h(S[n]) = K n + k0`` on ``[fit_lo, n_max]``.

    ``h`` is :func:`log_height`, so the fitted quantity is a doubly logarithmic
    size.  ``points`` holds ``(n, h(S[n]))``.
    """
    if n_max > 50:
        raise ValueError("n_max is capped at 50")
    if n_max - fit_lo + 1 < 10:
        raise InsufficientData("need at least 10 samples for the fit")
    orbit = generate(SomosRecurrence.somos8(), [1] * 8, hi=n_max)
    first = next((n for n, v in orbit.items() if not is_integral(v)), None)
    pts = [(n, log_height(orbit[n])) for n in range(1, n_max + 1)]
    ns = [n for n in range(fit_lo, n_max + 1)]
    heights = dict(pts)
    if any(heights[n] <= 0 for n in ns):
        raise InsufficientData("height 0 inside the fit range")
    K, k0, r = fit_linear(ns, [math.log(heights[n]) for n in ns])
    rep = GrowthReport("K n", K, k0, (fit_lo, n_max), r, pts, first)
    rep.orbit = orbit
    return rep
