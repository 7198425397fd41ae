"""Exact arithmetic: rationals, quotient-ring extensions, Laurent polynomials.

Scalars of the rational field are plain Python ``int`` (when integral) or
``fractions.Fraction``.  Every routine in the package is written against the
small duck-typed interface ``+ - * == exact_div`` so the same recurrence code
runs over

* the rationals (``int`` / ``Fraction``, or ``gmpy2`` ``mpz`` / ``mpq``),
* :class:`LaurentPoly` -- sparse multivariate Laurent polynomials over the
  integers,
* :class:`ExtElem` -- elements of ``R[s]/(s^m - gamma)`` for any of the above.

No floating point is used in this module.
"""

import heapq
import re
from fractions import Fraction
from math import gcd
from numbers import Integral, Rational
from typing import NamedTuple

from .errors import MixedExtension, NotDivisible, ZeroPolynomial

try:  # optional accelerator for very large operands
    import gmpy2
except ImportError:  # pragma: no cover
    gmpy2 = None

__all__ = [
    "Fraction",
    "ExtElem",
    "LaurentPoly",
    "ExponentProfile",
    "exact_div",
    "normalize",
    "is_zero",
    "is_integral",
    "parse_rational",
    "format_rational",
    "to_fast",
    "from_fast",
]


# ---------------------------------------------------------------------------
# rational scalars

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


def parse_rational(text):
    """Parse ``"p"`` or ``"p/q"``; decimals and floats are rejected."""
    if isinstance(text, Integral):
        return int(text)
    if isinstance(text, Fraction):
        return normalize(text)
    m = _RATIONAL_RE.match(str(text))
    if not m:
        raise ValueError(f"not an exact rational: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ValueError(f"zero denominator: {text!r}")
    return normalize(Fraction(num, den))


def format_rational(x):
    """Canonical decimal string: ``"p/q"`` in lowest terms, or ``"p"``."""
    if isinstance(x, Integral):
        return str(int(x))
    x = Fraction(int(x.numerator), int(x.denominator))
    return str(x)


def normalize(x):
    """Collapse integral rationals to integers; leave everything else alone."""
    if type(x) is Fraction:
        return x.numerator if x.denominator == 1 else x
    if gmpy2 is not None and type(x) is type(gmpy2.mpq()):
        return x.numerator if x.denominator == 1 else x
    return x


def is_integral(x):
    if isinstance(x, Integral):
        return True
    if isinstance(x, Rational):
        return x.denominator == 1
    return False


def is_zero(x):
    return x == 0


def to_fast(x):
    """Convert rational scalars to gmpy2 types (identity without gmpy2)."""
    if gmpy2 is None:
        return x
    if isinstance(x, Integral):
        return gmpy2.mpz(x)
    if isinstance(x, Rational):
        if x.denominator == 1:
            return gmpy2.mpz(x.numerator)
        return gmpy2.mpq(x.numerator, x.denominator)
    return x


def from_fast(x):
    if isinstance(x, Integral):
        return int(x)
    if isinstance(x, Rational):
        return normalize(Fraction(int(x.numerator), int(x.denominator)))
    return x


def exact_div(a, b):
    """Exact quotient ``a / b`` in the ring the operands live in.

    Rationals divide as a field (the result is an ``int`` whenever integral).
    Laurent polynomials and extension elements raise :class:`NotDivisible`
    when no exact quotient exists.  ``ZeroDivisionError`` for ``b == 0``.
    """
    if isinstance(a, ExtElem) or isinstance(b, ExtElem):
        return ExtElem._div(a, b)
    if isinstance(a, LaurentPoly) or isinstance(b, LaurentPoly):
        if not isinstance(a, LaurentPoly):
            a = b._promote(a)
        return a.div_exact(b)
    if b == 0:
        raise ZeroDivisionError("division by zero")
    if isinstance(a, Integral) and isinstance(b, Integral):
        q, r = divmod(a, b)
        if r == 0:
            return q
        if gmpy2 is not None and (type(a) is not int or type(b) is not int):
            return gmpy2.mpq(a, b)
        return Fraction(a, b)
    return normalize(a / b)


def _ring_pow(x, e):
    if e < 0:
        return exact_div(1, x ** (-e))
    return x ** e


# ---------------------------------------------------------------------------
# quotient-ring extensions  R[s]/(s^m - gamma)


class ExtElem:
    """Element ``c0 + c1 s + ... + c_{m-1} s^{m-1}`` with ``s^m = gamma``.

    Coefficients are stored densely; ``m`` is 2 or 4 in practice but any
    ``m >= 1`` works.  Perfect-power ``gamma`` values are *not* collapsed.
    """

    __slots__ = ("coeffs", "gamma")

    def __init__(self, coeffs, gamma):
        coeffs = tuple(normalize(c) for c in coeffs)
        if len(coeffs) < 1:
            raise ValueError("need at least one coefficient")
        self.coeffs = coeffs
        self.gamma = normalize(gamma)

    @classmethod
    def generator(cls, m, gamma):
        """The element ``s`` itself."""
        if m == 1:
            return cls((gamma,), gamma)
        return cls((0, 1) + (0,) * (m - 2), gamma)

    @classmethod
    def scalar(cls, c, m, gamma):
        return cls((c,) + (0,) * (m - 1), gamma)

    @classmethod
    def monomial(cls, c, e, m, gamma):
        """``c * s^e`` for ``0 <= e < m``."""
        cs = [0] * m
        cs[e] = c
        return cls(cs, gamma)

    @property
    def m(self):
        return len(self.coeffs)

    # -- helpers ----------------------------------------------------------

    def _like(self, coeffs):
        return ExtElem(coeffs, self.gamma)

    def _check(self, other):
        if other.m != self.m or other.gamma != self.gamma:
            raise MixedExtension(
                f"cannot combine s^{self.m}={self.gamma} with s^{other.m}={other.gamma}"
            )

    def _coerce(self, other):
        if isinstance(other, ExtElem):
            self._check(other)
            return other
        return ExtElem.scalar(other, self.m, self.gamma)

    def support(self):
        """Exponents ``e`` with a nonzero coefficient of ``s^e``."""
        return [e for e, c in enumerate(self.coeffs) if c != 0]

    def is_monomial(self):
        return len(self.support()) == 1

    def base_value(self):
        """The coefficient of ``s^0``; raises unless the element lies in R."""
        if any(c != 0 for c in self.coeffs[1:]):
            raise ValueError(f"{self} does not lie in the base ring")
        return self.coeffs[0]

    def collapse(self, root):
        """Evaluate at ``s = root`` (``root^m`` must equal ``gamma``)."""
        if root ** self.m != self.gamma:
            raise ValueError(f"{root}^{self.m} != {self.gamma}")
        total = 0
        p = 1
        for c in self.coeffs:
            total = total + c * p
            p = p * root
        return normalize(total)

    def map(self, fn):
        """Apply ``fn`` to every coefficient and to ``gamma``."""
        return ExtElem([fn(c) for c in self.coeffs], fn(self.gamma))

    def conjugate(self):
        """Substitute ``s -> -s``."""
        return self._like(c if e % 2 == 0 else -c for e, c in enumerate(self.coeffs))

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        return self._like(a + b for a, b in zip(self.coeffs, other.coeffs))

    __radd__ = __add__

    def __neg__(self):
        return self._like(-c for c in self.coeffs)

    def __sub__(self, other):
        other = self._coerce(other)
        return self._like(a - b for a, b in zip(self.coeffs, other.coeffs))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, ExtElem):
            return self._like(c * other for c in self.coeffs)
        self._check(other)
        m = self.m
        out = [0] * m
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                if b == 0:
                    continue
                k = i + j
                if k >= m:
                    out[k - m] = out[k - m] + a * b * self.gamma
                else:
                    out[k] = out[k] + a * b
        return self._like(out)

    def __rmul__(self, other):
        return self._like(other * c for c in self.coeffs)

    def __pow__(self, e):
        if e < 0:
            return exact_div(1, self ** (-e))
        result = ExtElem.scalar(1, self.m, self.gamma)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __truediv__(self, other):
        return exact_div(self, other)

    def __rtruediv__(self, other):
        return exact_div(other, self)

    def __eq__(self, other):
        if isinstance(other, ExtElem):
            return self.m == other.m and self.gamma == other.gamma and self.coeffs == other.coeffs
        try:
            return self.coeffs[0] == other and all(c == 0 for c in self.coeffs[1:])
        except TypeError:
            return NotImplemented

    def __hash__(self):
        if all(c == 0 for c in self.coeffs[1:]):
            return hash(self.coeffs[0])
        return hash((self.coeffs, self.gamma))

    def norm(self):
        """Product of all conjugates; an element of the base ring."""
        return _norm_chain(self)[0]

    @staticmethod
    def _div(a, b):
        if not isinstance(b, ExtElem):
            if b == 0:
                raise ZeroDivisionError("division by zero")
            return a._like(exact_div(c, b) for c in a.coeffs)
        if not isinstance(a, ExtElem):
            a = b._coerce(a)
        a._check(b)
        sup = b.support()
        if not sup:
            raise ZeroDivisionError("division by zero extension element")
        if len(sup) == 1:
            e = sup[0]
            c = b.coeffs[e]
            if e == 0:
                return a._like(exact_div(x, c) for x in a.coeffs)
            # 1/(c s^e) = s^(m-e) / (c * gamma)
            shifted = a * ExtElem.monomial(1, a.m - e, a.m, a.gamma)
            d = c * a.gamma
            return shifted._like(exact_div(x, d) for x in shifted.coeffs)
        n, cofactor = _norm_chain(b)
        if n == 0:
            raise NotDivisible(f"{b} is a zero divisor in the extension ring")
        num = a * cofactor
        return num._like(exact_div(x, n) for x in num.coeffs)

    def __repr__(self):
        return f"ExtElem({list(self.coeffs)!r}, gamma={self.gamma!r})"

    def __str__(self):
        parts = []
        for e, c in enumerate(self.coeffs):
            if c == 0:
                continue
            cs = format_rational(c) if isinstance(c, Rational) else f"({c})"
            if e == 0:
                parts.append(cs)
                continue
            power = "s" + (f"^{e}" if e > 1 else "")
            parts.append(power if cs == "1" else "-" + power if cs == "-1" else f"{cs}*{power}")
        if not parts:
            return "0"
        return " + ".join(parts).replace("+ -", "- ")


def _norm_chain(x):
    """Return ``(N, C)`` with ``x * C == N`` and ``N`` in the base ring."""
    m = x.m
    one = ExtElem.scalar(1, m, x.gamma)
    cofactor = one
    cur = x
    level = 1  # cur is a polynomial in s^level
    while level < m:
        if (m // level) % 2:
            raise NotImplementedError("norm only for power-of-two degree")
        # conjugate s^level -> -s^level
        conj = cur._like(
            c if (e // level) % 2 == 0 else -c for e, c in enumerate(cur.coeffs)
        )
        cofactor = cofactor * conj
        cur = cur * conj
        level *= 2
    return cur.coeffs[0], cofactor


# ---------------------------------------------------------------------------
# sparse multivariate Laurent polynomials over Z

_W = 24
_OFF = 1 << (_W - 1)
_MASK = (1 << _W) - 1
_LIMIT = 1 << (_W - 2)


class ExponentProfile(NamedTuple):
    min: int
    max: int
    residues: frozenset = None


class LaurentPoly:
    """Sparse Laurent polynomial in named variables with integer coefficients.

    Exponent vectors are packed into single integers (fixed-width fields with
    an offset) so that monomial multiplication is one integer addition and
    integer order coincides with lexicographic order on exponent vectors,
    first variable most significant.  Exponents must stay below 2**22 in
    absolute value.
    """

    __slots__ = ("variables", "_t", "_bias", "_hash")

    def __init__(self, variables, terms=None):
        self.variables = tuple(variables)
        n = len(self.variables)
        if len(set(self.variables)) != n:
            raise ValueError("duplicate variable names")
        self._bias = _bias(n)
        self._hash = None
        t = {}
        if terms:
            for exps, c in dict(terms).items():
                exps = tuple(exps)
                if len(exps) != n:
                    raise ValueError(f"exponent vector {exps} has wrong arity for {self.variables}")
                c = int(c)
                if c:
                    k = _pack(exps)
                    t[k] = t.get(k, 0) + c
                    if not t[k]:
                        del t[k]
        self._t = t

    @classmethod
    def _raw(cls, variables, packed, bias=None):
        obj = cls.__new__(cls)
        obj.variables = variables
        obj._bias = _bias(len(variables)) if bias is None else bias
        obj._t = packed
        obj._hash = None
        return obj

    # -- constructors -----------------------------------------------------

    @classmethod
    def constant(cls, variables, c):
        variables = tuple(variables)
        return cls(variables, {(0,) * len(variables): c})

    @classmethod
    def gen(cls, variables, name):
        variables = tuple(variables)
        exps = [0] * len(variables)
        exps[variables.index(name)] = 1
        return cls(variables, {tuple(exps): 1})

    @classmethod
    def gens(cls, variables):
        variables = tuple(variables)
        return tuple(cls.gen(variables, v) for v in variables)

    @classmethod
    def monomial(cls, variables, exps, coeff=1):
        variables = tuple(variables)
        if isinstance(exps, dict):
            exps = tuple(exps.get(v, 0) for v in variables)
        return cls(variables, {tuple(exps): coeff})

    def _promote(self, other):
        if isinstance(other, LaurentPoly):
            if other.variables != self.variables:
                raise ValueError(f"variable mismatch: {self.variables} vs {other.variables}")
            return other
        if isinstance(other, Rational) and not isinstance(other, Integral):
            if other.denominator != 1:
                raise TypeError(f"non-integer coefficient {other} for LaurentPoly")
            other = other.numerator
        if not isinstance(other, Integral):
            return NotImplemented
        other = int(other)
        return LaurentPoly._raw(self.variables, {self._bias: other} if other else {}, self._bias)

    # -- inspection ---------------------------------------------------------

    @property
    def terms(self):
        """Dict ``exponent tuple -> coefficient``."""
        n = len(self.variables)
        return {_unpack(k, n): c for k, c in self._t.items()}

    def items(self):
        """Terms in canonical (ascending lexicographic) order."""
        n = len(self.variables)
        return [(_unpack(k, n), self._t[k]) for k in sorted(self._t)]

    def coefficients(self):
        return [c for _, c in self.items()]

    def __len__(self):
        return len(self._t)

    def is_zero(self):
        return not self._t

    def is_monomial(self):
        return len(self._t) == 1

    def is_constant(self):
        return not self._t or (len(self._t) == 1 and self._bias in self._t)

    def constant_value(self):
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self._t.get(self._bias, 0)

    def leading_term(self):
        k = max(self._t)
        return _unpack(k, len(self.variables)), self._t[k]

    def exponent_profile(self, var, k=None):
        """Min/max exponent of ``var`` and optionally the residues mod ``k``."""
        if not self._t:
            raise ZeroPolynomial("exponent profile of the zero polynomial")
        i = self.variables.index(var)
        shift = _W * (len(self.variables) - 1 - i)
        exps = {((key >> shift) & _MASK) - _OFF for key in self._t}
        residues = frozenset(e % k for e in exps) if k else None
        return ExponentProfile(min(exps), max(exps), residues)

    def min_exponents(self):
        n = len(self.variables)
        if not self._t:
            return (0,) * n
        lows = [None] * n
        for k in self._t:
            for i, e in enumerate(_unpack(k, n)):
                if lows[i] is None or e < lows[i]:
                    lows[i] = e
        return tuple(lows)

    def is_polynomial(self, variables=None):
        """No negative exponent in any (or the given) variables."""
        lows = self.min_exponents()
        names = self.variables if variables is None else variables
        return all(lows[self.variables.index(v)] >= 0 for v in names)

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        other = self._promote(other)
        if other is NotImplemented:
            return other
        t = dict(self._t)
        for k, c in other._t.items():
            v = t.get(k, 0) + c
            if v:
                t[k] = v
            else:
                t.pop(k, None)
        return LaurentPoly._raw(self.variables, t, self._bias)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw(self.variables, {k: -c for k, c in self._t.items()}, self._bias)

    def __sub__(self, other):
        other = self._promote(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._promote(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, LaurentPoly):
            if other.variables != self.variables:
                raise ValueError(f"variable mismatch: {self.variables} vs {other.variables}")
            return self._mul(other)
        if isinstance(other, (Integral, Fraction)):
            other = self._promote(other)
            c = other.constant_value()
            if not c:
                return LaurentPoly._raw(self.variables, {}, self._bias)
            return LaurentPoly._raw(self.variables, {k: v * c for k, v in self._t.items()}, self._bias)
        return NotImplemented

    __rmul__ = __mul__

    def _mul(self, other):
        a, b = self._t, other._t
        if len(a) < len(b):
            a, b = b, a
        bias = self._bias
        out = {}
        get = out.get
        for kb, cb in b.items():
            off = kb - bias
            for ka, ca in a.items():
                k = ka + off
                out[k] = get(k, 0) + ca * cb
        return LaurentPoly._raw(self.variables, {k: c for k, c in out.items() if c}, bias)

    def __pow__(self, e):
        if e < 0:
            return exact_div(LaurentPoly.constant(self.variables, 1), self ** (-e))
        if len(self._t) == 1:
            (k, c), = self._t.items()
            return LaurentPoly._raw(self.variables, {(k - self._bias) * e + self._bias: c ** e}, self._bias)
        result = LaurentPoly.constant(self.variables, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __truediv__(self, other):
        return exact_div(self, other)

    def __rtruediv__(self, other):
        return exact_div(other, self)

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self.variables == other.variables and self._t == other._t
        if isinstance(other, Rational):
            if other == 0:
                return not self._t
            return self.is_constant() and self.constant_value() == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            if self.is_constant():
                self._hash = hash(self.constant_value())
            else:
                self._hash = hash((self.variables, frozenset(self._t.items())))
        return self._hash

    # -- division -----------------------------------------------------------

    def div_exact(self, divisor):
        """The unique ``q`` with ``q * divisor == self``, or :class:`NotDivisible`."""
        divisor = self._promote(divisor)
        if divisor is NotImplemented:
            raise TypeError("unsupported divisor")
        if not divisor._t:
            raise ZeroDivisionError("division by the zero polynomial")
        if not self._t:
            return self
        bias = self._bias
        if len(divisor._t) == 1:
            (kb, cb), = divisor._t.items()
            off = bias - kb
            out = {}
            for k, c in self._t.items():
                q, r = divmod(c, cb)
                if r:
                    raise NotDivisible(f"coefficient {c} not divisible by {cb}")
                out[k + off] = q
            return LaurentPoly._raw(self.variables, out, bias)
        n = len(self.variables)
        # shift both to genuine polynomials with no monomial factor
        sa = self.min_exponents()
        sb = divisor.min_exponents()
        ka0 = _pack(tuple(-e for e in sa)) - bias
        kb0 = _pack(tuple(-e for e in sb)) - bias
        rem = {k + ka0: c for k, c in self._t.items()}
        bt = {k + kb0: c for k, c in divisor._t.items()}
        lead_k = max(bt)
        lead_c = bt[lead_k]
        lead_e = _unpack(lead_k, n)
        rest = [(k - lead_k, c) for k, c in bt.items() if k != lead_k]
        heap = [-k for k in rem]
        heapq.heapify(heap)
        quot = {}
        while rem:
            k = -heapq.heappop(heap)
            c = rem.get(k)
            if c is None:
                continue
            e = _unpack(k, n)
            if any(x < y for x, y in zip(e, lead_e)):
                raise NotDivisible("leading monomial not divisible")
            qc, r = divmod(c, lead_c)
            if r:
                raise NotDivisible(f"coefficient {c} not divisible by {lead_c}")
            qk = k - lead_k + bias
            quot[qk] = qc
            del rem[k]
            for dk, dc in rest:
                kk = k + dk
                v = rem.get(kk)
                if v is None:
                    rem[kk] = -qc * dc
                    heapq.heappush(heap, -kk)
                else:
                    v -= qc * dc
                    if v:
                        rem[kk] = v
                    else:
                        del rem[kk]
        shift = kb0 - ka0
        return LaurentPoly._raw(self.variables, {k + shift: c for k, c in quot.items()}, bias)

    # -- evaluation and substitution ------------------------------------

    def evaluate(self, values):
        """Exact value at ``values`` (mapping name -> rational, or a sequence).

        Unmentioned variables raise ``KeyError``.  Values may be any ring
        elements supporting ``* + **`` (negative powers use exact division).
        """
        if not isinstance(values, dict):
            values = dict(zip(self.variables, values))
        n = len(self.variables)
        vals = [values[v] for v in self.variables]
        caches = [dict() for _ in range(n)]
        total = 0
        for k, c in self._t.items():
            term = c
            for i, e in enumerate(_unpack(k, n)):
                if e == 0:
                    continue
                p = caches[i].get(e)
                if p is None:
                    p = caches[i][e] = _ring_pow(vals[i], e)
                term = term * p
            total = total + term
        return normalize(total)

    def substitute(self, images, variables):
        """Substitute each variable by a :class:`LaurentPoly` over ``variables``.

        Variables missing from ``images`` are carried over by name.
        """
        target = tuple(variables)
        imgs = {}
        for v in self.variables:
            if v in images:
                img = images[v]
                if not isinstance(img, LaurentPoly):
                    img = LaurentPoly.constant(target, img)
                imgs[v] = img
            else:
                imgs[v] = LaurentPoly.gen(target, v)
        return self.evaluate(imgs) if self._t else LaurentPoly(target)

    def map_terms(self, variables, fn):
        """Rebuild over ``variables`` with ``fn(exps) -> new exps``."""
        out = {}
        for exps, c in self.terms.items():
            new = tuple(fn(exps))
            out[new] = out.get(new, 0) + c
        return LaurentPoly(variables, out)

    # -- serialization ----------------------------------------------------

    def to_records(self):
        return [{"exponents": list(e), "coeff": str(c)} for e, c in self.items()]

    @classmethod
    def from_records(cls, variables, records):
        return cls(variables, {tuple(r["exponents"]): int(r["coeff"]) for r in records})

    def __repr__(self):
        return f"LaurentPoly({self.variables!r}, {self.terms!r})"

    def __str__(self):
        if not self._t:
            return "0"
        parts = []
        for exps, c in reversed(self.items()):
            mono = "*".join(
                v if e == 1 else f"{v}^{e}" for v, e in zip(self.variables, exps) if e
            )
            if not mono:
                s = str(abs(c))
            elif abs(c) == 1:
                s = mono
            else:
                s = f"{abs(c)}*{mono}"
            parts.append(("- " if c < 0 else "+ ") + s)
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]


def _bias(n):
    b = 0
    for _ in range(n):
        b = (b << _W) | _OFF
    return b


def _pack(exps):
    k = 0
    for e in exps:
        if not -_LIMIT < e < _LIMIT:
            raise OverflowError(f"exponent {e} out of range")
        k = (k << _W) | (e + _OFF)
    return k


def _unpack(k, n):
    out = [0] * n
    for i in range(n - 1, -1, -1):
        out[i] = (k & _MASK) - _OFF
        k >>= _W
    return tuple(out)


def content(values):
    """gcd of an iterable of integers (``gcd() == 0``)."""
    g = 0
    for v in values:
        g = gcd(g, int(v))
    return g
