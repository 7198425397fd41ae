"""Sufficient integrality criteria for Somos 4/5 orbits and integral families.

The criteria only ever certify integrality.  A failed hypothesis gives
``Inconclusive``, never a claim that some term is non-integral.
"""

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .core import SomosOrbit, SomosRecurrence, generate
from .curve import j_tilde, t_invariant
from .errors import ConstraintViolated, NonIntegerOrbit, ZeroParameter, ZeroPivot
from .rings import format_rational, is_integral, normalize
from .symbolic import n_family_symbolic

__all__ = [
    "Verdict",
    "Hypothesis",
    "CriteriaReport",
    "check_cor_somos4",
    "check_thm_gcd",
    "check_cor_somos5",
    "FamilyMember",
    "family_abcde",
    "n_family",
    "divisor_indices",
    "gap_lengths",
]


class Verdict(enum.Enum):
    INTEGRAL_FORWARD = "IntegralForward"
    INTEGRAL_BIDIRECTIONAL = "IntegralBidirectional"
    INCONCLUSIVE = "Inconclusive"

    def __str__(self):
        return self.value


@dataclass
class Hypothesis:
    name: str
    holds: bool
    witness: object = None

    def to_json(self):
        w = self.witness
        if w is not None and not isinstance(w, str):
            w = format_rational(w) if is_integral(w) or hasattr(w, "denominator") else str(w)
        return {"name": self.name, "holds": self.holds, "witness": w}


@dataclass
class CriteriaReport:
    criterion: str
    verdict: Verdict
    hypotheses: list = field(default_factory=list)

    def to_json(self):
        return {
            "criterion": self.criterion,
            "verdict": str(self.verdict),
            "hypotheses": [h.to_json() for h in self.hypotheses],
        }

    def hypothesis(self, name):
        for h in self.hypotheses:
            if h.name == name:
                return h
        raise KeyError(name)


def _int(x):
    return is_integral(normalize(x))


def _verdict(forward, backward):
    if not all(h.holds for h in forward):
        return Verdict.INCONCLUSIVE
    if all(h.holds for h in backward):
        return Verdict.INTEGRAL_BIDIRECTIONAL
    return Verdict.INTEGRAL_FORWARD


def _backward_window(rec, inits, start):
    """Terms at ``start-3 .. start-1`` (``None`` entries when a pivot vanishes)."""
    try:
        orbit = generate(rec, inits, lo=start - 3, start=start)
        return [orbit[n] for n in range(start - 3, start)]
    except ZeroPivot:
        return [None, None, None]


def check_cor_somos4(alpha, beta, inits, backward=None):
    """Somos 4 criterion from ``A1..A4`` (backward terms computed if not given).

    Forward: ``alpha, beta`` integers, ``A1 = +-1``, ``A2..A4`` nonzero
    integers, ``beta T`` integral.  Bidirectional: also ``A0, A-1, A-2``.
    ``inits`` may also be the seven terms ``A-2..A4``.
    """
    alpha, beta = normalize(alpha), normalize(beta)
    inits = [normalize(v) for v in inits]
    if len(inits) == 7:
        backward, inits = inits[:3], inits[3:]
    if len(inits) != 4:
        raise ValueError("expected A1..A4 or A-2..A4")
    rec = SomosRecurrence.somos4(alpha, beta)
    hyps = [
        Hypothesis("alpha integral", _int(alpha), alpha),
        Hypothesis("beta integral", _int(beta), beta),
        Hypothesis("A1 = +-1", inits[0] in (1, -1), inits[0]),
        Hypothesis("A2..A4 nonzero integers", all(_int(v) and v != 0 for v in inits[1:]), None),
    ]
    if all(v != 0 for v in inits):
        bT = normalize(beta * t_invariant(alpha, beta, inits))
        hyps.append(Hypothesis("beta*T integral", _int(bT), bT))
    else:
        hyps.append(Hypothesis("beta*T integral", False, "T undefined (zero term)"))
    if backward is None:
        backward = _backward_window(rec, inits, 1)
    back = [
        Hypothesis(f"A{n} integral", v is not None and _int(v), v)
        for n, v in zip((-2, -1, 0), backward)
    ]
    return CriteriaReport("somos4", _verdict(hyps, back), hyps + back)


def _gcd(*vals):
    g = 0
    for v in vals:
        g = gcd(g, int(v))
    return g


def check_thm_gcd(alpha, beta, window):
    """Eight-term gcd criterion on ``A-2..A5``: all integral and
    ``gcd(alpha, beta) = gcd(A1, A2) = gcd(alpha, A0, A2) = gcd(alpha, A1, A3) = 1``.

    ``window`` may be the four terms ``A1..A4``; the rest is iterated.
    """
    alpha, beta = normalize(alpha), normalize(beta)
    w = [normalize(v) for v in window]
    if len(w) == 4:
        rec = SomosRecurrence.somos4(alpha, beta)
        try:
            o = generate(rec, w, lo=-2, hi=5)
            w = o[-2:6]
        except ZeroPivot as exc:
            return CriteriaReport(
                "gcd", Verdict.INCONCLUSIVE, [Hypothesis("window computable", False, exc.index)]
            )
    if len(w) != 8:
        raise ValueError("expected A-2..A5 (8 terms) or A1..A4")
    hyps = [
        Hypothesis("alpha integral", _int(alpha), alpha),
        Hypothesis("beta integral", _int(beta), beta),
        Hypothesis("A-2..A5 integral", all(_int(v) for v in w), None),
    ]
    if all(h.holds for h in hyps):
        a_2, a_1, a0, a1, a2, a3, a4, a5 = w
        for name, g in (
            ("gcd(alpha, beta) = 1", _gcd(alpha, beta)),
            ("gcd(A1, A2) = 1", _gcd(a1, a2)),
            ("gcd(alpha, A0, A2) = 1", _gcd(alpha, a0, a2)),
            ("gcd(alpha, A1, A3) = 1", _gcd(alpha, a1, a3)),
        ):
            hyps.append(Hypothesis(name, g == 1, g))
    ok = all(h.holds for h in hyps)
    return CriteriaReport("gcd", Verdict.INTEGRAL_BIDIRECTIONAL if ok else Verdict.INCONCLUSIVE, hyps)


def check_cor_somos5(alpha, beta, inits, backward=None):
    """Somos 5 criterion from ``tau1..tau5``: ``alpha, beta`` integers,
    ``tau1, tau2 = +-1``, ``tau3..tau5`` nonzero integers, ``alpha J~`` integral;
    bidirectional with ``tau0, tau-1, tau-2`` integral.  ``inits`` may also be
    ``tau-2..tau5``.
    """
    alpha, beta = normalize(alpha), normalize(beta)
    inits = [normalize(v) for v in inits]
    if len(inits) == 8:
        backward, inits = inits[:3], inits[3:]
    if len(inits) != 5:
        raise ValueError("expected tau1..tau5 or tau-2..tau5")
    rec = SomosRecurrence.somos5(alpha, beta)
    hyps = [
        Hypothesis("alpha integral", _int(alpha), alpha),
        Hypothesis("beta integral", _int(beta), beta),
        Hypothesis("tau1 = +-1", inits[0] in (1, -1), inits[0]),
        Hypothesis("tau2 = +-1", inits[1] in (1, -1), inits[1]),
        Hypothesis("tau3..tau5 nonzero integers", all(_int(v) and v != 0 for v in inits[2:]), None),
    ]
    if all(v != 0 for v in inits):
        aJ = normalize(alpha * j_tilde(alpha, beta, inits).J)
        hyps.append(Hypothesis("alpha*J integral", _int(aJ), aJ))
    else:
        hyps.append(Hypothesis("alpha*J integral", False, "J undefined (zero term)"))
    if backward is None:
        backward = _backward_window(rec, inits, 1)
    back = [
        Hypothesis(f"tau{n} integral", v is not None and _int(v), v)
        for n, v in zip((-2, -1, 0), backward)
    ]
    return CriteriaReport("somos5", _verdict(hyps, back), hyps + back)


# ---------------------------------------------------------------------------
# families


@dataclass(frozen=True)
class FamilyMember:
    recurrence: SomosRecurrence
    inits: tuple
    window: tuple  # A-2 .. A5
    beta_T: int


def family_abcde(a, d, e, b, c):
    """Integral Somos 4 orbit from integers with ``a^3 d + e^2 = b c``.

    ``alpha = e^3``, ``beta = a d e^3``, ``A1..A4 = 1, a, e^2, c e^3``.
    """
    a, d, e, b, c = (int(v) for v in (a, d, e, b, c))
    if a ** 3 * d + e * e != b * c:
        raise ConstraintViolated(f"a^3 d + e^2 = {a ** 3 * d + e * e} != b c = {b * c}")
    if a == 0 or e == 0 or d == 0 or c == 0:
        raise ConstraintViolated("a, c, d and e must be nonzero")
    rec = SomosRecurrence.somos4(e ** 3, a * d * e ** 3)
    inits = (1, a, e * e, c * e ** 3)
    window = (
        e ** 3 * (b * b * d + e * (b + d)),
        a * e * (b + d),
        b,
        *inits,
        a * e ** 6 * (c + d * e),
    )
    orbit = generate(rec, inits, lo=-2, hi=5)
    if tuple(orbit[-2:6]) != window:
        raise AssertionError("closed-form window disagrees with iteration")  # pragma: no cover
    bT = d * e ** 4 * (a ** 3 + b * e + c)
    if normalize(rec.beta * t_invariant(rec.alpha, rec.beta, inits)) != bT:
        raise AssertionError("closed-form beta*T disagrees")  # pragma: no cover
    return FamilyMember(rec, inits, window, bT)


def n_family(N, lo=-20, hi=40, terms=None):
    """Orbit of ``alpha = -1/N, beta = 1, A1..A4 = 1, -N, N, 1`` by evaluating
    the polynomial terms at ``N`` (valid through zero terms)."""
    N = normalize(N)
    if N == 0:
        raise ZeroParameter("N must be nonzero")
    terms = terms or n_family_symbolic(lo, hi)
    values = [terms[n].evaluate({"N": N}) for n in range(lo, hi + 1)]
    rec = SomosRecurrence.somos4(normalize(-1 / Fraction(N)), 1)
    return SomosOrbit(rec, lo, values)


def divisor_indices(orbit, p):
    out = []
    for n, v in orbit.items():
        if not is_integral(v):
            raise NonIntegerOrbit(f"term {n} = {v} is not an integer")
        if int(v) % p == 0:
            out.append(n)
    return out


def gap_lengths(orbit, p, lo=None, hi=None):
    """Differences between consecutive indices ``n`` in ``[lo, hi]`` with ``p | A[n]``."""
    lo = orbit.lo if lo is None else lo
    hi = orbit.hi if hi is None else hi
    idx = [n for n in divisor_indices(orbit, p) if lo <= n <= hi]
    return [b - a for a, b in zip(idx, idx[1:])]
