"""Somos-k recurrences: iteration in both directions, gauge and covariance
transformations, and the induced second-order (QRT-type) map.

A Somos-k recurrence reads::

    S[n+k] S[n] = sum_{j=1}^{k//2} a_j S[n+k-j] S[n+j]

Terms may live in any ring supported by :func:`somos.rings.exact_div`.
"""

from dataclasses import dataclass
from fractions import Fraction

from .errors import InconsistentWindow, MissingIndex, ZeroGaugeParameter, ZeroPivot, ZeroTerm
from .rings import _ring_pow, exact_div, format_rational, normalize

__all__ = [
    "SomosRecurrence",
    "SomosOrbit",
    "generate",
    "gauge_apply",
    "covariance_apply",
    "qrt_step",
    "qrt_invariant",
    "to_f_sequence",
    "somos4_coefficients_from_terms",
]


@dataclass(frozen=True)
class SomosRecurrence:
    """Order ``k`` and the ``k // 2`` coefficients ``a_1 .. a_{k//2}``."""

    order: int
    coefficients: tuple

    def __post_init__(self):
        object.__setattr__(self, "coefficients", tuple(normalize(c) for c in self.coefficients))
        if self.order not in (4, 5, 8):
            raise ValueError(f"unsupported order {self.order}; expected 4, 5 or 8")
        if len(self.coefficients) != self.order // 2:
            raise ValueError(
                f"order {self.order} needs {self.order // 2} coefficients, got {len(self.coefficients)}"
            )
        if self.order == 8 and any(c != 1 for c in self.coefficients):
            raise ValueError("order 8 is only supported with unit coefficients")

    @classmethod
    def somos4(cls, alpha, beta):
        return cls(4, (alpha, beta))

    @classmethod
    def somos5(cls, alpha, beta):
        return cls(5, (alpha, beta))

    @classmethod
    def somos8(cls):
        return cls(8, (1, 1, 1, 1))

    @property
    def alpha(self):
        return self.coefficients[0]

    @property
    def beta(self):
        return self.coefficients[1]

    def rhs(self, get, n):
        """Right-hand side for the step whose outer product is ``S[n+k] S[n]``."""
        k = self.order
        total = 0
        for j, a in enumerate(self.coefficients, start=1):
            total = total + a * get(n + k - j) * get(n + j)
        return total

    def residual(self, get, n):
        return get(n + self.order) * get(n) - self.rhs(get, n)


class SomosOrbit:
    """Contiguous window of terms ``S[lo] .. S[hi]`` of a recurrence.

    Instances are immutable; transformations return new orbits.
    """

    __slots__ = ("recurrence", "lo", "_values", "base_index")

    def __init__(self, recurrence, lo, values, base_index=1):
        self.recurrence = recurrence
        self.lo = lo
        self._values = tuple(values)
        self.base_index = base_index

    @property
    def hi(self):
        return self.lo + len(self._values) - 1

    def __len__(self):
        return len(self._values)

    def __contains__(self, n):
        return self.lo <= n <= self.hi

    def __getitem__(self, n):
        if isinstance(n, slice):
            start = self.lo if n.start is None else n.start
            stop = self.hi + 1 if n.stop is None else n.stop
            return [self[i] for i in range(start, stop)]
        if not self.lo <= n <= self.hi:
            raise MissingIndex(n)
        return self._values[n - self.lo]

    def indices(self):
        return range(self.lo, self.hi + 1)

    def values(self):
        return list(self._values)

    def items(self):
        return list(zip(self.indices(), self._values))

    def window(self, start, length):
        return [self[i] for i in range(start, start + length)]

    def residual(self, n):
        """Recurrence residual of the step ``S[n+k] S[n] = ...``."""
        return self.recurrence.residual(self.__getitem__, n)

    def residuals(self):
        k = self.recurrence.order
        return {n: self.residual(n) for n in range(self.lo, self.hi - k + 1)}

    def map(self, fn, recurrence=None):
        return SomosOrbit(
            self.recurrence if recurrence is None else recurrence,
            self.lo,
            [fn(n, v) for n, v in self.items()],
            self.base_index,
        )

    def to_json(self):
        return [{"index": n, "value": _fmt(v)} for n, v in self.items()]

    def __repr__(self):
        return f"SomosOrbit(order={self.recurrence.order}, lo={self.lo}, hi={self.hi})"


def _fmt(v):
    try:
        return format_rational(v)
    except (AttributeError, TypeError):
        return str(v)


def generate(rec, inits, lo=None, hi=None, start=1):
    """Iterate ``rec`` from ``inits`` (placed at indices ``start ..``).

    Returns the orbit on ``[min(lo, start), max(hi, start + k - 1)]``.
    Raises :class:`ZeroPivot` naming the index of the zero divisor.
    """
    k = rec.order
    inits = [normalize(v) for v in inits]
    if len(inits) != k:
        raise ValueError(f"need {k} initial values, got {len(inits)}")
    lo = start if lo is None else min(lo, start)
    hi = start + k - 1 if hi is None else max(hi, start + k - 1)
    terms = {start + i: v for i, v in enumerate(inits)}
    get = terms.__getitem__
    for n in range(start, hi - k + 1):
        pivot = terms[n]
        if pivot == 0:
            raise ZeroPivot(n)
        terms[n + k] = exact_div(rec.rhs(get, n), pivot)
    for n in range(start - 1, lo - 1, -1):
        pivot = terms[n + k]
        if pivot == 0:
            raise ZeroPivot(n + k)
        terms[n] = exact_div(rec.rhs(get, n), pivot)
    return SomosOrbit(rec, lo, [terms[i] for i in range(lo, hi + 1)], base_index=start)


def extend(orbit, lo=None, hi=None):
    """Re-generate ``orbit`` over a wider index range."""
    k = orbit.recurrence.order
    start = orbit.base_index if orbit.base_index in orbit and orbit.base_index + k - 1 in orbit else orbit.lo
    return generate(
        orbit.recurrence,
        orbit.window(start, k),
        lo=orbit.lo if lo is None else min(lo, orbit.lo),
        hi=orbit.hi if hi is None else max(hi, orbit.hi),
        start=start,
    )


def gauge_apply(orbit, a, b):
    """``S[n] -> a * b**n * S[n]``; the recurrence is unchanged."""
    if a == 0 or b == 0:
        raise ZeroGaugeParameter("gauge parameters must be nonzero")
    a, b = normalize(a), normalize(b)
    return orbit.map(lambda n, v: normalize(a * _ring_pow(b, n) * v))


def covariance_apply(orbit, c):
    """``A[n] -> c**(n*n) * A[n]`` for Somos 4.

    Returns ``(recurrence, orbit)`` with coefficients ``(c^6 alpha, c^8 beta)``.
    """
    if orbit.recurrence.order != 4:
        raise ValueError("covariance transformation is defined for Somos 4 only")
    if c == 0:
        raise ZeroGaugeParameter("covariance parameter must be nonzero")
    c = normalize(c)
    alpha, beta = orbit.recurrence.coefficients
    rec = SomosRecurrence.somos4(c ** 6 * alpha, c ** 8 * beta)
    return rec, orbit.map(lambda n, v: normalize(c ** (n * n) * v), recurrence=rec)


def qrt_step(f_prev, f_cur, alpha, beta):
    """One step of ``f[n+1] f[n]^2 f[n-1] = alpha f[n] + beta``."""
    if f_prev == 0 or f_cur == 0:
        raise ZeroPivot(None, "zero iterate in QRT step")
    return exact_div(alpha * f_cur + beta, f_cur * f_cur * f_prev)


def qrt_invariant(f0, f1, alpha, beta):
    """Conserved quantity ``f0 f1 + alpha (1/f0 + 1/f1) + beta / (f0 f1)``."""
    if f0 == 0 or f1 == 0:
        raise ZeroTerm(None, "zero iterate in QRT invariant")
    p = f0 * f1
    return normalize(p + alpha * exact_div(f0 + f1, p) + exact_div(beta, p))


def to_f_sequence(orbit):
    """``f[n] = A[n-1] A[n+1] / A[n]^2`` for every interior index of ``orbit``."""
    out = {}
    for n in range(orbit.lo + 1, orbit.hi):
        a = orbit[n]
        if a == 0:
            raise ZeroTerm(n)
        out[n] = exact_div(orbit[n - 1] * orbit[n + 1], a * a)
    return out


def somos4_coefficients_from_terms(values):
    """Recover ``(alpha, beta)`` from six consecutive terms of a Somos 4 orbit.

    Solves the two linear equations given by the first two recurrence steps
    and checks any further steps supplied.
    """
    v = [normalize(x) for x in values]
    if len(v) < 6:
        raise ValueError("need at least six consecutive terms")
    # A4 A0 = alpha A3 A1 + beta A2^2 ;  A5 A1 = alpha A4 A2 + beta A3^2
    a11, a12, r1 = v[3] * v[1], v[2] * v[2], v[4] * v[0]
    a21, a22, r2 = v[4] * v[2], v[3] * v[3], v[5] * v[1]
    det = a11 * a22 - a12 * a21
    if det == 0:
        raise ZeroTerm(None, "terms do not determine the coefficients (singular system)")
    alpha = normalize(Fraction(r1 * a22 - r2 * a12) / det)
    beta = normalize(Fraction(a11 * r2 - a21 * r1) / det)
    for n in range(len(v) - 4):
        if v[n + 4] * v[n] != alpha * v[n + 3] * v[n + 1] + beta * v[n + 2] ** 2:
            raise InconsistentWindow(f"terms are not a Somos 4 orbit (step {n})")
    return alpha, beta
