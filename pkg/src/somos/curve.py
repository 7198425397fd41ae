"""Conserved quantities of Somos 4/5 orbits and the associated elliptic curve.

The curve is ``y^2 = 4x^3 - g2 x - g3``.  Points carry coordinates in the
quadratic extension ``Q[s]/(s^2 - alpha)`` so that ``sqrt(alpha)`` is exact.
Addition is done on the short model ``Y^2 = X^3 + A X + B`` with
``x = X``, ``y = 2Y``, ``A = -g2/4``, ``B = -g3/4``.
"""

from dataclasses import dataclass, field
from typing import NamedTuple

from .core import extend
from .errors import (
    InconsistentWindow,
    PointNotOnCurve,
    ZeroAlpha,
    ZeroParameter,
    ZeroTerm,
)
from .rings import ExtElem, LaurentPoly, exact_div, format_rational, normalize

__all__ = [
    "INFINITE",
    "Somos4Invariants",
    "Somos5Invariants",
    "CurveData",
    "Point",
    "t_invariant",
    "t_ratio_form",
    "t_four_term",
    "t_five_term",
    "i_invariant",
    "lambda_invariant",
    "somos4_invariants",
    "j_tilde",
    "j_closed_form",
    "curve_from_invariants",
    "sequence_points",
    "ec_add",
    "ec_neg",
    "ec_mul",
    "verify_correspondence",
    "n_family_curve",
    "SymbolicCurve",
]


class _Infinite:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "INFINITE"

    def __str__(self):
        return "infinite"


INFINITE = _Infinite()


# ---------------------------------------------------------------------------
# Somos 4 invariants


def _nonzero(values, offset=0):
    for i, v in enumerate(values):
        if v == 0:
            raise ZeroTerm(offset + i)


def t_ratio_form(alpha, beta, w):
    """Translation invariant from ``(A[n-1], A[n], A[n+1], A[n+2])``, ratio form."""
    a0, a1, a2, a3 = w
    _nonzero(w)
    return normalize(
        exact_div(a0 * a3, a1 * a2)
        + alpha * (exact_div(a1 * a1, a0 * a2) + exact_div(a2 * a2, a1 * a3))
        + exact_div(beta * a1 * a2, a0 * a3)
    )


def t_four_term(alpha, beta, w):
    """Translation invariant from four adjacent terms, single-fraction form."""
    a1, a2, a3, a4 = w
    _nonzero(w)
    num = a1 * a1 * a4 * a4 + alpha * (a2 ** 3 * a4 + a1 * a3 ** 3) + beta * a2 * a2 * a3 * a3
    return normalize(exact_div(num, a1 * a2 * a3 * a4))


def t_five_term(alpha, w):
    """Translation invariant from ``A[n-2] .. A[n+2]`` (no ``beta`` needed)."""
    b0, b1, b2, b3, b4 = w
    _nonzero(w[1:4], 1)
    return normalize(
        exact_div(b1 * b4, b2 * b3) + alpha * exact_div(b2 * b2, b1 * b3) + exact_div(b0 * b3, b1 * b2)
    )


def t_invariant(alpha, beta, window):
    """Translation invariant ``T`` from 4 or 5 consecutive nonzero terms.

    All applicable formulas are evaluated; a disagreement means the window is
    not part of an orbit of the given recurrence.
    """
    window = [normalize(v) for v in window]
    if len(window) == 4:
        t = t_four_term(alpha, beta, window)
        if t != t_ratio_form(alpha, beta, window):
            raise InconsistentWindow("four-term formulas disagree")  # pragma: no cover
        return t
    if len(window) == 5:
        _nonzero(window)
        t = t_four_term(alpha, beta, window[1:])
        others = (
            t_four_term(alpha, beta, window[:4]),
            t_ratio_form(alpha, beta, window[1:]),
            t_five_term(alpha, window),
        )
        if any(o != t for o in others):
            raise InconsistentWindow("window does not satisfy the recurrence")
        return t
    raise ValueError("window must hold 4 or 5 consecutive terms")


def i_invariant(alpha, beta, T):
    return normalize(alpha * alpha + beta * T)


def lambda_invariant(alpha, beta, T):
    if alpha == 0:
        raise ZeroAlpha("lambda is undefined for alpha = 0")
    return normalize(exact_div(exact_div(T * T, 4) - beta, 3 * alpha))


@dataclass(frozen=True)
class Somos4Invariants:
    T: object
    lam: object
    I: object


def somos4_invariants(alpha, beta, window):
    T = t_invariant(alpha, beta, window)
    return Somos4Invariants(T, lambda_invariant(alpha, beta, T), i_invariant(alpha, beta, T))


@dataclass(frozen=True)
class Somos5Invariants:
    J: object
    I_tilde: object


def j_tilde(alpha, beta, window):
    """``J~`` of a Somos 5 orbit from five consecutive nonzero terms."""
    t1, t2, t3, t4, t5 = [normalize(v) for v in window]
    _nonzero((t1, t2, t3, t4, t5))
    J = normalize(
        exact_div(t4 * t1, t3 * t2)
        + exact_div(t5 * t2, t4 * t3)
        + alpha * (exact_div(t3 * t2, t4 * t1) + exact_div(t4 * t3, t5 * t2))
        + exact_div(beta * t3 * t3, t5 * t1)
    )
    return Somos5Invariants(J, normalize(beta + alpha * J))


# ---------------------------------------------------------------------------
# curve data


@dataclass(frozen=True)
class CurveData:
    g2: object
    g3: object
    j: object
    A: object = field(init=False)
    B: object = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "A", normalize(-exact_div(self.g2, 4)))
        object.__setattr__(self, "B", normalize(-exact_div(self.g3, 4)))

    @property
    def discriminant(self):
        return normalize(self.g2 ** 3 - 27 * self.g3 ** 2)

    def rhs(self, x):
        return 4 * x * x * x - self.g2 * x - self.g3

    def contains(self, P):
        if P.is_infinity:
            return True
        return P.y * P.y == self.rhs(P.x)

    def to_json(self):
        return {
            "g2": format_rational(self.g2),
            "g3": format_rational(self.g3),
            "j": "infinite" if self.j is INFINITE else {
                "num": str(normalize(self.j).numerator if hasattr(self.j, "numerator") else self.j),
                "den": str(getattr(self.j, "denominator", 1)),
            },
        }


def _g2_num(alpha, beta, T):
    return T ** 4 - 8 * beta * T ** 2 - 24 * alpha ** 2 * T + 16 * beta ** 2


def _g3_num(alpha, beta, T):
    return (
        T ** 6 - 12 * beta * T ** 4 - 36 * alpha ** 2 * T ** 3 + 48 * beta ** 2 * T ** 2
        + 144 * alpha ** 2 * beta * T + 216 * alpha ** 4 - 64 * beta ** 3
    )


def j_closed_form(alpha, beta, T):
    """j-invariant directly in terms of ``(alpha, beta, T)``."""
    num = _g2_num(alpha, beta, T) ** 3
    den = alpha ** 4 * (
        beta * T ** 4 + alpha ** 2 * T ** 3 - 8 * beta ** 2 * T ** 2
        - 36 * alpha ** 2 * beta * T + 16 * beta ** 3 - 27 * alpha ** 4
    )
    if den == 0:
        return INFINITE
    return normalize(exact_div(num, den))


def _j_from_g(g2, g3):
    disc = g2 ** 3 - 27 * g3 ** 2
    if disc == 0:
        return INFINITE
    return normalize(exact_div(1728 * g2 ** 3, disc))


def curve_from_invariants(alpha, beta, T):
    """Weierstrass data ``(g2, g3, j)`` of the curve attached to ``(alpha, beta, T)``."""
    if alpha == 0:
        raise ZeroAlpha("the curve is undefined for alpha = 0")
    g2 = normalize(exact_div(_g2_num(alpha, beta, T), 12 * alpha ** 2))
    g3 = normalize(-exact_div(_g3_num(alpha, beta, T), 216 * alpha ** 3))
    j = _j_from_g(g2, g3)
    closed = j_closed_form(alpha, beta, T)
    if (j is INFINITE) != (closed is INFINITE) or (j is not INFINITE and j != closed):
        raise AssertionError(f"j mismatch: {j} vs {closed}")  # pragma: no cover
    return CurveData(g2, g3, j)


# ---------------------------------------------------------------------------
# points and the group law


class Point(NamedTuple):
    """Affine point ``(x, y)`` on ``y^2 = 4x^3 - g2 x - g3``, or infinity."""

    x: object = None
    y: object = None

    @classmethod
    def infinity(cls):
        return cls(None, None)

    @property
    def is_infinity(self):
        return self.x is None

    def __str__(self):
        if self.is_infinity:
            return "O"
        return f"({self.x}, {self.y})"


def _to_ext(v, gamma):
    if isinstance(v, ExtElem):
        return v
    return ExtElem.scalar(v, 2, gamma)


def sequence_points(orbit, alpha, beta, T=None):
    """Base point ``P = (lambda, s)`` and translate ``Q`` with ``s^2 = alpha``.

    ``Q = (lambda - f0, f0^2 (f1 - f_{-1}) / s)`` with ``f`` evaluated from
    ``A[-2] .. A[2]``.
    """
    if alpha == 0:
        raise ZeroAlpha("alpha must be nonzero")
    if T is None:
        T = t_invariant(alpha, beta, orbit.window(1, 4))
    lam = lambda_invariant(alpha, beta, T)
    s = ExtElem.generator(2, alpha)
    f = _f_values(orbit, -1, 1)
    P = Point(_to_ext(lam, alpha), s)
    Q = Point(_to_ext(lam - f[0], alpha), exact_div(f[0] ** 2 * (f[1] - f[-1]) * 1, s))
    return P, Q


def _f_values(orbit, lo, hi):
    out = {}
    for n in range(lo, hi + 1):
        a = orbit[n]
        if a == 0:
            raise ZeroTerm(n)
        out[n] = exact_div(orbit[n - 1] * orbit[n + 1], a * a)
    return out


def ec_neg(P):
    return P if P.is_infinity else Point(P.x, -P.y)


def ec_add(P, Q, curve, check=True):
    """Chord-and-tangent addition; ``Point.infinity()`` is the identity."""
    if check:
        for R in (P, Q):
            if not curve.contains(R):
                raise PointNotOnCurve(f"{R} is not on the curve")
    if P.is_infinity:
        return Q
    if Q.is_infinity:
        return P
    X1, Y1 = P.x, exact_div(P.y, 2)
    X2, Y2 = Q.x, exact_div(Q.y, 2)
    if X1 == X2:
        if Y1 == -Y2:
            return Point.infinity()
        slope = exact_div(3 * X1 * X1 + curve.A, 2 * Y1)
    else:
        slope = exact_div(Y2 - Y1, X2 - X1)
    X3 = slope * slope - X1 - X2
    Y3 = slope * (X1 - X3) - Y1
    return Point(X3, 2 * Y3)


def ec_mul(n, P, curve):
    """``[n]P`` by double-and-add (negative ``n`` allowed)."""
    if n < 0:
        return ec_mul(-n, ec_neg(P), curve)
    result = Point.infinity()
    addend = P
    while n:
        if n & 1:
            result = ec_add(result, addend, curve, check=False)
        n >>= 1
        if n:
            addend = ec_add(addend, addend, curve, check=False)
    return result


@dataclass
class CorrespondenceReport:
    curve: CurveData
    P: Point
    Q: Point
    lam: object
    T: object
    checked: list
    branch: str
    t_identity: bool
    doubling_identity: bool

    @property
    def ok(self):
        return bool(self.checked) and self.branch in ("+", "-") and self.t_identity and self.doubling_identity


def verify_correspondence(orbit, lo, hi):
    """Check ``Q + [n]P = (lambda - f[n], f[n]^2 (f[n+1] - f[n-1]) / s)`` for ``lo <= n <= hi``.

    Points are combined with the group law only (no closed forms).  Also checks
    ``T = 6 lambda^2 - g2/2`` and ``beta = alpha (x([2]P) - lambda)``.
    """
    alpha, beta = orbit.recurrence.coefficients
    if orbit.lo > min(lo - 2, -2) or orbit.hi < max(hi + 2, 4):
        orbit = extend(orbit, min(lo - 2, -2), max(hi + 2, 4))
    T = t_invariant(alpha, beta, orbit.window(1, 4))
    lam = lambda_invariant(alpha, beta, T)
    curve = curve_from_invariants(alpha, beta, T)
    P, Q = sequence_points(orbit, alpha, beta, T)
    for R in (P, Q):
        if not curve.contains(R):
            raise PointNotOnCurve(f"{R} is not on the curve")
    s = P.y
    f = _f_values(orbit, lo - 1, hi + 1)

    def expected(n, sign):
        return Point(_to_ext(lam - f[n], alpha), sign * exact_div(f[n] ** 2 * (f[n + 1] - f[n - 1]), s))

    branch = None
    checked = []
    forward = [(n, 1) for n in range(max(lo, 0), hi + 1)]
    backward = [(n, -1) for n in range(min(hi, -1), lo - 1, -1)]
    for walk in (forward, backward):
        R = None
        for n, step in walk:
            if R is None:
                R = ec_mul(n, P, curve)
                R = ec_add(Q, R, curve)
            else:
                R = ec_add(R, P if step > 0 else ec_neg(P), curve)
            if not curve.contains(R):
                raise PointNotOnCurve(f"Q+[{n}]P left the curve", index=n)
            if R.is_infinity or R.x != expected(n, 1).x:
                raise PointNotOnCurve(f"x(Q+[{n}]P) != lambda - f[{n}]", index=n)
            sign = "+" if R.y == expected(n, 1).y else "-" if R.y == expected(n, -1).y else None
            if sign is None or (branch is not None and sign != branch):
                raise PointNotOnCurve(f"y(Q+[{n}]P) does not match either branch", index=n)
            branch = sign
            checked.append(n)
    two_p = ec_add(P, P, curve)
    doubling = (not two_p.is_infinity) and beta == alpha * (two_p.x.base_value() - lam)
    t_identity = T == normalize(6 * lam * lam - exact_div(curve.g2, 2))
    return CorrespondenceReport(curve, P, Q, lam, T, sorted(checked), branch, t_identity, doubling)


# ---------------------------------------------------------------------------
# the one-parameter family  alpha = -1/N, beta = 1


def _n_g2_num(N):
    return N ** 16 - 4 * N ** 12 + 30 * N ** 8 + 20 * N ** 4 + 1


def _n_g3_num(N):
    return N ** 24 - 6 * N ** 20 + 51 * N ** 16 - 56 * N ** 12 + 195 * N ** 8 + 30 * N ** 4 + 1


def _n_j_den(N):
    return N ** 16 * (N ** 12 - 5 * N ** 8 + 39 * N ** 4 + 2)


@dataclass(frozen=True)
class SymbolicCurve:
    """Family invariants as integer polynomials: ``g2 = g2_num / g2_den`` etc."""

    g2_num: LaurentPoly
    g2_den: LaurentPoly
    g3_num: LaurentPoly
    g3_den: LaurentPoly
    j_num: LaurentPoly
    j_den: LaurentPoly

    def specialize(self, value):
        ev = lambda p: p.evaluate({"N": value})
        g2 = exact_div(ev(self.g2_num), ev(self.g2_den))
        g3 = exact_div(ev(self.g3_num), ev(self.g3_den))
        den = ev(self.j_den)
        return CurveData(g2, g3, INFINITE if den == 0 else exact_div(ev(self.j_num), den))


def n_family_curve(N=None):
    """Curve of the family ``alpha = -1/N, beta = 1, T = -N^2 - 1/N^2``.

    With a rational ``N`` returns :class:`CurveData` (cross-checked against
    :func:`curve_from_invariants`).  With ``N=None`` returns the
    :class:`SymbolicCurve` in an indeterminate ``N``; the identity
    ``g2num^3 - g3num^2 = 1728 * jden`` is verified exactly.
    """
    if N is None or isinstance(N, LaurentPoly):
        X = LaurentPoly.gen(("N",), "N") if N is None else N
        one = LaurentPoly.constant(X.variables, 1)
        g2n, g3n = _n_g2_num(X), _n_g3_num(X)
        jden = _n_j_den(X)
        if g2n ** 3 - g3n ** 2 != 1728 * jden:
            raise AssertionError("family discriminant identity failed")  # pragma: no cover
        return SymbolicCurve(g2n, 12 * X ** 6, g3n, 216 * X ** 9, g2n ** 3, jden + 0 * one)
    N = normalize(N)
    if N == 0:
        raise ZeroParameter("N must be nonzero")
    g2 = normalize(exact_div(_n_g2_num(N), 12 * N ** 6))
    g3 = normalize(exact_div(_n_g3_num(N), 216 * N ** 9))
    den = _n_j_den(N)
    j = INFINITE if den == 0 else normalize(exact_div(_n_g2_num(N) ** 3, den))
    data = CurveData(g2, g3, j)
    alpha = normalize(exact_div(-1, N))
    T = normalize(-N * N - exact_div(1, N * N))
    ref = curve_from_invariants(alpha, 1, T)
    if (ref.g2, ref.g3) != (g2, g3) or (ref.j is INFINITE) != (j is INFINITE) or (
        j is not INFINITE and ref.j != j
    ):
        raise AssertionError(f"family formulas disagree with general formulas at N={N}")  # pragma: no cover
    return data
