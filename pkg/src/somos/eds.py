"""Elliptic divisibility sequences and the companion EDS of a Somos 4/5 orbit.

A (generalized) EDS here always has ``W1 = 1``; it satisfies the Somos 4
recurrence with ``alpha = W2^2`` and ``beta = -W3``.  Terms are produced
with the doubling identities, which only ever divide by ``W2``.
"""

from dataclasses import dataclass
from .core import SomosOrbit, SomosRecurrence, generate
from .curve import Point, curve_from_invariants, ec_add, ec_mul, i_invariant, t_invariant
from .errors import (
    DegenerateInvariant,
    MissingIndex,
    NonIntegerSequence,
    NotDivisible,
    PointNotOnCurve,
    ZeroAlpha,
    ZeroPivot,
)
from .rings import ExtElem, LaurentPoly, exact_div, from_fast, is_integral, normalize, to_fast

__all__ = [
    "EdsSequence",
    "EdsBlock",
    "companion_of_somos4",
    "companion_of_somos5",
    "companion_from_root",
    "ward_identity_check",
    "eds_double_step",
    "fast_somos_term",
    "somos_hankel_check",
    "DivisibilityReport",
    "divisibility_check",
    "divpoly_from_curve",
    "divpoly_points_check",
]


class EdsSequence:
    """EDS ``W`` with ``W0 = 0``, ``W1 = 1`` and given ``W2, W3, W4``.

    Terms are cached; negative indices use ``W[-n] = -W[n]``.
    """

    def __init__(self, w2, w3, w4, parameters=None):
        if w2 == 0:
            raise ZeroAlpha("W2 must be nonzero")
        one = w2 ** 0 if isinstance(w2, (ExtElem, LaurentPoly)) else 1
        self._w = {0: 0 * one, 1: one, 2: w2, 3: w3 * one, 4: w4 * one}
        self.parameters = parameters if parameters is not None else (w2 * w2, -w3)

    @property
    def alpha(self):
        return self.parameters[0]

    @property
    def beta(self):
        return self.parameters[1]

    def __getitem__(self, n):
        if n < 0:
            return -self[-n]
        w = self._w
        if n not in w:
            top = max(w)
            for k in range(top + 1, n + 1):
                w[k] = self._next(k)
        return w[n]

    def _next(self, k):
        w = self._w
        m = (k - 1) // 2
        if k % 2:
            return w[m] ** 3 * w[m + 2] - w[m + 1] ** 3 * w[m - 1]
        m = (k - 2) // 2
        num = w[m] ** 2 * w[m + 1] * w[m + 3] - w[m - 1] * w[m + 1] * w[m + 2] ** 2
        return exact_div(num, w[2])

    def terms(self, lo, hi):
        return [self[n] for n in range(lo, hi + 1)]

    def residual(self, n):
        """Residual of ``W[n+4] W[n] = alpha W[n+3] W[n+1] + beta W[n+2]^2``."""
        a, b = self.alpha, self.beta
        return self[n + 4] * self[n] - (a * self[n + 3] * self[n + 1] + b * self[n + 2] ** 2)

    def block(self, m):
        return EdsBlock(m, tuple(self[i] for i in range(m - 3, m + 5)))

    def collapse(self, root, lo, hi):
        """Terms with the extension generator replaced by a concrete root."""
        out = []
        for n in range(lo, hi + 1):
            v = self[n]
            out.append(normalize(v.collapse(root)) if isinstance(v, ExtElem) else v)
        return out


@dataclass(frozen=True)
class EdsBlock:
    center: int
    values: tuple  # W[center-3 .. center+4]

    def __getitem__(self, n):
        i = n - self.center + 3
        if not 0 <= i < 8:
            raise MissingIndex(n)
        return self.values[i]


def companion_of_somos4(alpha, beta, T):
    """Companion EDS ``1, -s, -beta, I s`` with ``s^2 = alpha`` and ``I = alpha^2 + beta T``.

    ``alpha`` may be a rational or a :class:`LaurentPoly`; in the latter case
    the caller must supply ``s`` as a polynomial via :func:`companion_from_root`.
    """
    alpha = normalize(alpha)
    if alpha == 0:
        raise ZeroAlpha("companion EDS needs alpha != 0")
    s = ExtElem.generator(2, alpha)
    I = i_invariant(alpha, beta, T)
    W = EdsSequence(-s, -beta, I * s, parameters=(alpha, beta))
    W.I = I
    return W


def companion_from_root(s, beta, I):
    """Companion EDS with an explicit square root ``s`` of alpha (e.g. a variable ``u``)."""
    return EdsSequence(-s, -beta, I * s, parameters=(s * s, beta))


def companion_of_somos5(alpha, beta, J):
    """Companion ``a`` of a Somos 5 orbit, living in ``Q[mu]/(mu^4 - I~)``.

    ``a1 = 1, a2 = -mu, a3 = alpha, a4 = mu beta`` and
    ``a[n+4] a[n] = mu^2 a[n+3] a[n+1] - alpha a[n+2]^2``.
    """
    I = normalize(beta + alpha * J)
    if I == 0:
        raise DegenerateInvariant("I~ = beta + alpha J~ vanishes")
    mu = ExtElem.generator(4, I)
    W = EdsSequence(-mu, ExtElem.scalar(alpha, 4, I), mu * beta, parameters=(mu * mu, -alpha))
    W.I = I
    return W


def ward_identity_check(W, m, n):
    """Residual of ``W[n+m] W[n-m] = W[m]^2 W[n-1] W[n+1] - W[m-1] W[m+1] W[n]^2``."""
    lhs = W[n + m] * W[n - m]
    rhs = W[m] * W[n - 1] * W[m] * W[n + 1] - W[m - 1] * W[n] * W[m + 1] * W[n]
    return lhs - rhs


def eds_double_step(block, w2=None):
    """``(W[2m+1], W[2m+2])`` from a block centred at ``m``."""
    m = block.center
    W = block.__getitem__
    if w2 is None:
        if not block.center - 3 <= 2 <= block.center + 4:
            raise ValueError("block does not contain W2; pass it explicitly")
        w2 = W(2)
    odd = W(m) ** 3 * W(m + 2) - W(m + 1) ** 3 * W(m - 1)
    num = W(m) ** 2 * W(m + 1) * W(m + 3) - W(m - 1) * W(m + 1) * W(m + 2) ** 2
    return odd, exact_div(num, w2)


# ---------------------------------------------------------------------------
# fast evaluation of Somos 4 terms


def _w_double(w, w2):
    """Map ``W[m-3..m+4]`` to ``W[2m-3..2m+5]`` (nine terms)."""
    out = []
    for j in range(-3, 6):  # index 2m + j
        if j % 2:  # 2m + j = 2(m + (j-1)/2) + 1
            c = (j - 1) // 2 + 3
            out.append(w[c] ** 3 * w[c + 2] - w[c + 1] ** 3 * w[c - 1])
        else:  # 2m + j = 2(m + (j-2)/2) + 2
            c = (j - 2) // 2 + 3
            num = w[c] ** 2 * w[c + 1] * w[c + 3] - w[c - 1] * w[c + 1] * w[c + 2] ** 2
            out.append(exact_div(num, w2))
    return out


def _a_double(w, a, w2, a1):
    """Map ``A[m-2..m+4]`` (with ``W[m-3..m+4]``) to ``A[2m-2..2m+5]``.

    Odd targets use ``A[2k+1] A1 = W[k]^2 A[k] A[k+2] - W[k-1] W[k+1] A[k+1]^2``;
    even targets ``W2 A1 A[2k+2] = W[k+1] W[k] A[k+3] A[k] - W[k-1] W[k+2] A[k+1] A[k+2]``.
    """
    out = []
    # W index m+d -> w[d+3], A index m+d -> a[d+2]
    for j in range(-2, 6):
        if j % 2:
            d = (j - 1) // 2
            num = w[d + 3] ** 2 * a[d + 2] * a[d + 4] - w[d + 2] * w[d + 4] * a[d + 3] ** 2
            out.append(exact_div(num, a1))
        else:
            d = (j - 2) // 2
            num = w[d + 4] * w[d + 3] * a[d + 5] * a[d + 2] - w[d + 2] * w[d + 5] * a[d + 3] * a[d + 4]
            out.append(exact_div(num, w2 * a1))
    return out


def _base(v):
    if isinstance(v, ExtElem):
        return v.base_value()
    return v


def fast_somos_term(rec, inits, n, fast=True):
    """``A[n]`` of the Somos 4 orbit with ``A1..A4 = inits`` in O(log n) steps.

    Uses the companion EDS and Hankel identities on blocks of eight ``W``
    and seven ``A`` values.  Besides the initial window the only divisions
    are by ``A1`` and ``W2``.  Negative indices go through the reversed orbit
    ``B[k] = A[5-k]``.  With ``fast=True`` integer data is moved to gmpy2.
    """
    if rec.order != 4:
        raise ValueError("fast evaluation is implemented for Somos 4 only")
    alpha, beta = rec.coefficients
    inits = [normalize(v) for v in inits]
    if n <= 0:
        return fast_somos_term(rec, inits[::-1], 5 - n, fast=fast)
    if n < 16:
        return generate(rec, inits, hi=max(n, 4))[n]
    if inits[0] == 0:
        raise ZeroPivot(1)
    L = n.bit_length()
    c = n >> (L - 3)
    seed = generate(rec, inits, hi=c + 4)
    T = t_invariant(alpha, beta, inits)
    W = companion_of_somos4(alpha, beta, T)
    conv = to_fast if fast else (lambda x: x)
    back = from_fast if fast else (lambda x: x)
    w2 = W[2].map(conv)
    wblk = [W[i].map(conv) for i in range(c - 3, c + 5)]
    ablk = [conv(seed[i]) for i in range(c - 2, c + 5)]
    a1 = conv(inits[0])
    m = c
    for bit in range(L - 4, -1, -1):
        b = (n >> bit) & 1
        w9 = _w_double(wblk, w2)   # W[2m-3 .. 2m+5]
        a8 = _a_double(wblk, ablk, w2, a1)  # A[2m-2 .. 2m+5]
        wblk = w9[b:b + 8]
        ablk = a8[b:b + 7]
        m = 2 * m + b
    val = _base(ablk[2])
    return normalize(back(val))


# ---------------------------------------------------------------------------
# Hankel identities coupling an orbit with its companion


def somos_hankel_check(orbit, W, m, n):
    """Residuals of the Hankel identities for ``(m, n)``.

    Somos 4: ``{"square": ..., "shifted": ...}`` where
    square:  ``A[n+m] A[n-m] - (W[m]^2 A[n+1] A[n-1] - W[m-1] W[m+1] A[n]^2)``
    shifted: ``W1 W2 A[n+m+1] A[n-m] - (W[m+1] W[m] A[n+2] A[n-1] - W[m-1] W[m+2] A[n] A[n+1])``.
    Somos 5 only has the shifted form.
    """
    A = orbit.__getitem__
    out = {}
    shifted = W[1] * W[2] * A(n + m + 1) * A(n - m) - (
        W[m + 1] * W[m] * A(n + 2) * A(n - 1) - W[m - 1] * W[m + 2] * A(n) * A(n + 1)
    )
    if orbit.recurrence.order == 4:
        out["square"] = A(n + m) * A(n - m) - (
            W[m] ** 2 * A(n + 1) * A(n - 1) - W[m - 1] * W[m + 1] * A(n) ** 2
        )
    out["shifted"] = shifted
    return out


# ---------------------------------------------------------------------------
# divisibility


@dataclass
class DivisibilityReport:
    lo: int
    hi: int
    pairs_checked: int
    violations: list

    @property
    def ok(self):
        return not self.violations


def divisibility_check(values, lo=1, hi=None):
    """Check ``W[n] | W[m]`` whenever ``n | m`` for ``lo <= n <= m <= hi``.

    ``values`` is an :class:`EdsSequence` (integer valued) or a mapping /
    sequence indexed from 1.  ``W[n] = 0`` divides only ``0``.
    """
    if isinstance(values, EdsSequence):
        get = values.__getitem__
    elif isinstance(values, dict):
        get = values.__getitem__
    else:
        seq = list(values)
        get = lambda k: seq[k - 1]
        hi = len(seq) if hi is None else hi
    if hi is None:
        raise ValueError("hi is required")
    vals = {}
    for k in range(max(lo, 1), hi + 1):
        v = get(k)
        if isinstance(v, ExtElem):
            v = v.base_value()
        if not is_integral(v):
            raise NonIntegerSequence(f"term {k} = {v} is not an integer")
        vals[k] = int(v)
    bad, count = [], 0
    for d in vals:
        for mult in range(2 * d, hi + 1, d):
            count += 1
            a, b = vals[d], vals[mult]
            if (a == 0 and b != 0) or (a != 0 and b % a):
                bad.append((d, mult))
    return DivisibilityReport(lo, hi, count, bad)


# ---------------------------------------------------------------------------
# division-polynomial basis


def divpoly_from_curve(A, B, X, Y2=None):
    """``(alpha^2, beta, I)`` for the EDS of a point ``(X, Y)`` on ``Y^2 = X^3 + A X + B``.

    Works for rationals and for :class:`LaurentPoly` inputs.  ``Y2`` defaults
    to ``X^3 + A X + B``; if supplied it must agree.
    """
    rhs = X ** 3 + A * X + B
    if Y2 is None:
        Y2 = rhs
    elif Y2 != rhs:
        raise PointNotOnCurve("Y^2 != X^3 + A X + B")
    alpha2 = 16 * Y2 * Y2
    beta = A * A - 6 * X * X * A - 12 * X * B - 3 * X ** 4
    I = 2 * A ** 3 + 10 * X * X * A * A - (10 * X ** 4 - 8 * X * B) * A - 2 * X ** 6 - 40 * X ** 3 * B + 16 * B * B
    if isinstance(alpha2, LaurentPoly):
        return alpha2, beta, I
    return normalize(alpha2), normalize(beta), normalize(I)


def divpoly_points_check(A, B, X, Y, n_max=8):
    """Verify ``x([n]P) = X - W[n-1] W[n+1] / W[n]^2`` for ``2 <= n <= n_max``.

    ``W`` is the EDS with ``sqrt(alpha) = 2Y``; multiples are formed with the
    group law.  Returns the list of checked ``n``; raises
    :class:`PointNotOnCurve` on the first mismatch.
    """
    A, B, X, Y = (normalize(v) for v in (A, B, X, Y))
    if Y * Y != X ** 3 + A * X + B:
        raise PointNotOnCurve("(X, Y) is not on the curve")
    alpha2, beta, I = divpoly_from_curve(A, B, X)
    if alpha2 == 0:
        raise DegenerateInvariant("2-torsion point: alpha = 0")
    s = 2 * Y
    W = companion_from_root(s, beta, I)
    # the curve with g2 = -4A, g3 = -4B; P = (X, 2Y) in the (x, y) model
    from .curve import CurveData

    curve = CurveData(normalize(-4 * A), normalize(-4 * B), None)
    P = Point(X, 2 * Y)
    checked = []
    R = P
    for n in range(2, n_max + 1):
        R = ec_add(R, P, curve)
        if W[n] == 0:
            if not R.is_infinity:
                raise PointNotOnCurve(f"W[{n}] = 0 but [{n}]P is finite", index=n)
        elif R.is_infinity or R.x != normalize(X - exact_div(W[n - 1] * W[n + 1], W[n] ** 2)):
            raise PointNotOnCurve(f"x([{n}]P) disagrees with the EDS", index=n)
        checked.append(n)
    return checked
