"""Laurent-polynomial iteration of Somos 4 and its companion EDS.

Variable sets:

* ``("alpha", "beta", "A1", "A2", "A3", "A4")`` for plain iteration,
* ``("u", "beta", "I", "A1", "A2", "A3", "A4")`` with ``alpha = u^2`` for the
  construction through the companion EDS,
* ``("u", "beta", "I")`` for the EDS alone,
* ``("N",)`` for the one-parameter family ``alpha = -1/N, beta = 1``.

Every division below is an exact Laurent-polynomial division; a failure
raises :class:`NotDivisible`.
"""

from dataclasses import dataclass, field

from .core import SomosRecurrence, generate
from .eds import companion_from_root
from .errors import MembershipViolation
from .rings import LaurentPoly, exact_div

__all__ = [
    "PLAIN_VARS",
    "STRONG_VARS",
    "EDS_VARS",
    "FAMILY_VARS",
    "MembershipEntry",
    "LaurentReport",
    "symbolic_somos4",
    "strong_laurent_terms",
    "strong_laurent_check",
    "specialize_strong",
    "symbolic_eds",
    "eds_parity_check",
    "positivity_check",
    "n_family_symbolic",
    "n_family_check",
]

PLAIN_VARS = ("alpha", "beta", "A1", "A2", "A3", "A4")
STRONG_VARS = ("u", "beta", "I", "A1", "A2", "A3", "A4")
EDS_VARS = ("u", "beta", "I")
FAMILY_VARS = ("N",)

DEFAULT_BOUNDS = {"somos4": 14, "strong": 12, "eds": 16, "positivity": 10}


@dataclass
class MembershipEntry:
    n: int
    monomials: int
    min_coeff: int
    membership: bool
    witness: object = None

    def to_json(self):
        return {
            "n": self.n,
            "monomials": self.monomials,
            "min_coeff": str(self.min_coeff),
            "membership": "pass" if self.membership else "fail",
            **({"witness": list(self.witness)} if self.witness is not None else {}),
        }


@dataclass
class LaurentReport:
    kind: str
    entries: list = field(default_factory=list)
    notes: dict = field(default_factory=dict)

    @property
    def ok(self):
        return all(e.membership for e in self.entries) and all(
            v for k, v in self.notes.items() if k.endswith("_ok")
        )

    def failures(self):
        return [e for e in self.entries if not e.membership]

    def to_json(self):
        return {
            "kind": self.kind,
            "ok": self.ok,
            "entries": [e.to_json() for e in self.entries],
            "notes": {k: v for k, v in self.notes.items()},
        }


def _entry(n, p, bad=None):
    coeffs = p.coefficients()
    return MembershipEntry(n, len(p), min(coeffs) if coeffs else 0, bad is None, bad)


def _raise_first(report, strict):
    if strict and not report.ok:
        bad = report.failures()
        if bad:
            e = bad[0]
            raise MembershipViolation(f"{report.kind}: membership fails at n={e.n}", e.witness)
        raise MembershipViolation(f"{report.kind}: check failed ({report.notes})")
    return report


# ---------------------------------------------------------------------------
# plain iteration


def symbolic_somos4(n_max=DEFAULT_BOUNDS["somos4"], n_min=1):
    """``{n: A[n]}`` over ``PLAIN_VARS`` for ``n_min <= n <= n_max``."""
    alpha, beta, *inits = LaurentPoly.gens(PLAIN_VARS)
    orbit = generate(SomosRecurrence(4, (alpha, beta)), inits, lo=n_min, hi=max(n_max, 4))
    return {n: orbit[n] for n in range(n_min, n_max + 1)}


def positivity_check(n_max=DEFAULT_BOUNDS["positivity"], terms=None):
    """Every coefficient of ``A[n]`` is positive; failures are reported, never raised.

    ``notes["monomials_nondecreasing"]`` records whether the term count grows
    weakly with ``n`` (an observation, not part of ``ok``).
    """
    terms = terms or symbolic_somos4(n_max)
    report = LaurentReport("positivity")
    counts = []
    for n in range(1, n_max + 1):
        p = terms[n]
        bad = None
        for exps, c in p.items():
            if c <= 0:
                bad = exps
                break
        report.entries.append(_entry(n, p, bad))
        counts.append(len(p))
    report.notes["monomials_nondecreasing"] = all(a <= b for a, b in zip(counts, counts[1:]))
    return report


# ---------------------------------------------------------------------------
# companion EDS


def symbolic_eds(n_max=DEFAULT_BOUNDS["eds"]):
    """Companion EDS over ``EDS_VARS``: ``W1 = 1, W2 = -u, W3 = -beta, W4 = I u``."""
    u, beta, I = LaurentPoly.gens(EDS_VARS)
    W = companion_from_root(u, beta, I)
    W[n_max + 3]
    return W


def eds_parity_check(n_max=DEFAULT_BOUNDS["eds"], strict=False):
    """Odd ``W[n]`` have ``u``-exponents ``= 0 mod 4``, even ones ``= 1 mod 4``;
    ``beta`` and ``I`` appear with nonnegative exponents only."""
    W = symbolic_eds(n_max)
    report = LaurentReport("eds_parity")
    vars_ = W[1].variables
    for n in range(1, n_max + 1):
        p = W[n]
        want = 0 if n % 2 else 1
        bad = None
        for exps, _ in p.items():
            e = dict(zip(vars_, exps))
            if e["u"] % 4 != want or e["beta"] < 0 or e["I"] < 0 or e["u"] < 0:
                bad = exps
                break
        report.entries.append(_entry(n, p, bad))
    report.notes["antisymmetry_ok"] = all(W[-n] == -W[n] for n in range(0, n_max + 1))
    report.notes["recurrence_ok"] = all(W.residual(n) == 0 for n in range(-3, n_max - 3))
    return _raise_first(report, strict)


def strong_laurent_terms(n_max=DEFAULT_BOUNDS["strong"]):
    """``{n: A[n]}`` over ``STRONG_VARS`` built only from the Hankel identities.

    ``A[2m+1] A1 = W[m]^2 A[m] A[m+2] - W[m-1] W[m+1] A[m+1]^2`` and
    ``W2 A1 A[2m+2] = W[m+1] W[m] A[m+3] A[m] - W[m-1] W[m+2] A[m+1] A[m+2]``;
    the only divisors are ``A1`` and ``u``.
    """
    u, beta, I, a1, a2, a3, a4 = LaurentPoly.gens(STRONG_VARS)
    W = companion_from_root(u, beta, I)
    A = {1: a1, 2: a2, 3: a3, 4: a4}
    for n in range(5, n_max + 1):
        if n % 2:
            m = (n - 1) // 2
            num = W[m] ** 2 * A[m] * A[m + 2] - W[m - 1] * W[m + 1] * A[m + 1] ** 2
            A[n] = exact_div(num, a1)
        else:
            m = (n - 2) // 2
            num = W[m + 1] * W[m] * A[m + 3] * A[m] - W[m - 1] * W[m + 2] * A[m + 1] * A[m + 2]
            A[n] = exact_div(num, W[2] * a1)
    return {n: A[n] for n in range(1, n_max + 1)}


def _to_plain(p):
    """Rewrite a ``STRONG_VARS`` polynomial with even ``u`` powers over
    ``("alpha", "beta", "I", A1..A4)`` using ``u^2 = alpha``."""
    vars_ = ("alpha",) + STRONG_VARS[1:]
    return p.map_terms(vars_, lambda e: (e[0] // 2,) + tuple(e[1:]))


def _substitute_I(p):
    """``I -> alpha^2 + beta T`` with ``T`` the four-term invariant of ``A1..A4``."""
    alpha, beta, a1, a2, a3, a4 = LaurentPoly.gens(PLAIN_VARS)
    T = exact_div(
        a1 ** 2 * a4 ** 2 + alpha * (a2 ** 3 * a4 + a1 * a3 ** 3) + beta * a2 ** 2 * a3 ** 2,
        a1 * a2 * a3 * a4,
    )
    return p.substitute({"I": alpha ** 2 + beta * T}, PLAIN_VARS)


def strong_laurent_check(n_max=DEFAULT_BOUNDS["strong"], strict=False, plain=None):
    """Membership of ``A[n]`` in ``Z[alpha, beta, I, A1^{+-1}, A2, A3, A4]``.

    Per ``n``: no negative exponent of ``beta, I, A2, A3, A4``; ``u`` only in
    even powers.  ``notes["dual_path_ok"]`` compares against plain iteration
    after ``I -> alpha^2 + beta T``.
    """
    terms = strong_laurent_terms(n_max)
    plain = plain or symbolic_somos4(n_max)
    report = LaurentReport("strong_laurent")
    agree = []
    for n in range(1, n_max + 1):
        p = terms[n]
        bad = None
        for exps, _ in p.items():
            e = dict(zip(STRONG_VARS, exps))
            if e["u"] % 2 or any(e[v] < 0 for v in ("u", "beta", "I", "A2", "A3", "A4")):
                bad = exps
                break
        report.entries.append(_entry(n, p, bad))
        if bad is None:
            agree.append(_substitute_I(_to_plain(p)) == plain[n])
        else:
            agree.append(False)
    report.notes["dual_path_ok"] = all(agree)
    report.notes["dual_path"] = agree
    return _raise_first(report, strict)


def specialize_strong(p, alpha, beta, I, inits):
    """Evaluate a ``STRONG_VARS`` term at numeric data (``u^2 -> alpha``)."""
    q = _to_plain(p)
    return q.evaluate(dict(zip(q.variables, (alpha, beta, I, *inits))))


# ---------------------------------------------------------------------------
# the one-parameter family


def n_family_symbolic(lo=-8, hi=20):
    """``{n: A[n](N)}`` for ``alpha = -1/N, beta = 1`` and ``A1..A4 = 1, -N, N, 1``."""
    (N,) = LaurentPoly.gens(FAMILY_VARS)
    one = LaurentPoly.constant(FAMILY_VARS, 1)
    rec = SomosRecurrence(4, (exact_div(-one, N), one))
    orbit = generate(rec, [one, -N, N, one], lo=min(lo, 1), hi=max(hi, 4))
    return {n: orbit[n] for n in range(lo, hi + 1)}


def _n_zero_value(n):
    """Value of ``A[n](0)``."""
    m, r = divmod(n, 4)
    if r == 0:
        return (-1) ** ((m - 1) % 2) * 2 ** (m * (m - 1) // 2)
    if r == 1:
        return 2 ** (m * (m - 1) // 2)
    return 0


def n_family_check(lo=-8, hi=20, strict=False, terms=None):
    """Polynomiality and ``N``-parity of the family, its values at ``N = 0``,
    and that the backward terms agree with the reversed orbit ``B[n] = A[5-n]``."""
    terms = terms or n_family_symbolic(lo, hi)
    report = LaurentReport("n_family")
    for n in range(lo, hi + 1):
        p = terms[n]
        want = 1 if n % 4 in (2, 3) else 0
        bad = None
        for exps, _ in p.items():
            if exps[0] < 0 or exps[0] % 2 != want:
                bad = exps
                break
        report.entries.append(_entry(n, p, bad))
    report.notes["zero_values_ok"] = all(
        terms[n].evaluate({"N": 0}) == _n_zero_value(n) for n in range(lo, hi + 1)
    )
    # B[n] = A[5-n] iterated forward from (1, N, -N, 1) reproduces the backward terms
    (N,) = LaurentPoly.gens(FAMILY_VARS)
    one = LaurentPoly.constant(FAMILY_VARS, 1)
    rec = SomosRecurrence(4, (exact_div(-one, N), one))
    rev = generate(rec, [one, N, -N, one], hi=max(5 - lo, 4))
    report.notes["reversal_ok"] = all(terms[n] == rev[5 - n] for n in range(lo, min(hi, 4) + 1))
    return _raise_first(report, strict)
