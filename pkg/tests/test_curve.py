from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

from somos import SomosRecurrence, generate
from somos.core import covariance_apply
from somos.curve import (
    INFINITE,
    Point,
    curve_from_invariants,
    ec_add,
    ec_mul,
    j_tilde,
    lambda_invariant,
    n_family_curve,
    sequence_points,
    somos4_invariants,
    t_five_term,
    t_four_term,
    t_invariant,
    t_ratio_form,
    verify_correspondence,
)
from somos.errors import InconsistentWindow, PointNotOnCurve, ZeroAlpha, ZeroParameter, ZeroPivot, ZeroTerm
from somos.rings import ExtElem

F = Fraction
rationals = st.fractions(min_value=-4, max_value=4, max_denominator=4).filter(bool)


def test_t_examples():
    assert t_invariant(1, 1, [1, 1, 1, 1]) == 4
    assert t_invariant(1331, 119790, [1, 3, 121, 177023]) == 869
    assert t_invariant(F(-1, 2), 1, [1, -2, 2, 1]) == F(-17, 4)


def test_t_five_term_window_and_inconsistency():
    assert t_invariant(1, 1, [2, 1, 1, 1, 1]) == 4
    with pytest.raises(InconsistentWindow):
        t_invariant(1, 1, [1, 1, 1, 1, 3])
    with pytest.raises(ZeroTerm):
        t_invariant(1, 1, [1, 0, 1, 1])


def test_invariant_records():
    inv = somos4_invariants(1, 1, [1, 1, 1, 1])
    assert (inv.T, inv.lam, inv.I) == (4, 1, 5)
    inv = somos4_invariants(1331, 119790, [1, 3, 121, 177023])
    assert 119790 * inv.T == 104097510 and inv.I == 105869071
    with pytest.raises(ZeroAlpha):
        lambda_invariant(0, 1, 4)


def test_j_tilde_examples():
    assert j_tilde(14641, 1771561, [847, 8, 1, 1, 33]).J == 627
    assert j_tilde(14641, 1771561, [847, 8, 1, 1, 33]).I_tilde == 10951468
    assert j_tilde(1, 1, [1] * 5).J == 5


def test_curve_somos4():
    c = curve_from_invariants(1, 1, 4)
    assert (c.g2, c.g3, c.j) == (4, -1, F(110592, 37))
    assert c.j == F(2 ** 12 * 3 ** 3, 37)
    with pytest.raises(ZeroAlpha):
        curve_from_invariants(0, 1, 4)


def test_curve_singular_gives_infinite_j():
    # g2^3 = 27 g3^2 when the discriminant polynomial vanishes; beta=0, T=3*alpha^(2/3)
    # choose alpha = 8, beta = 0, T = 12: D = T^3 a^2 - 27 a^4 = 1728*64 - 27*4096 = 0
    c = curve_from_invariants(8, 0, 12)
    assert c.j is INFINITE and c.discriminant == 0


def test_j_values_family_and_alpha_1331():
    c34 = n_family_curve(2)
    assert c34.j == F(3 ** 3 * 19051 ** 3, 2 ** 17 * 1721)
    c31 = curve_from_invariants(1331, 119790, 869)
    assert c31.j == F(5 ** 3 * 23 ** 6 * 1013 ** 3, 2 ** 4 * 11 ** 7 * 17 ** 2 * 37 * 1069)


def test_n_family_curve():
    assert n_family_curve(1).g2 == 4 and n_family_curve(1).g3 == 1
    assert n_family_curve(1).j == F(2 ** 12 * 3 ** 3, 37)
    sym = n_family_curve()
    N = sp.Symbol("N")
    den = sp.Poly(sum(c * N ** e[0] for e, c in sym.j_den.items()), N)
    assert sp.expand(den.as_expr() - N ** 16 * (N ** 12 - 5 * N ** 8 + 39 * N ** 4 + 2)) == 0
    assert sym.specialize(3).j == n_family_curve(3).j
    with pytest.raises(ZeroParameter):
        n_family_curve(0)


def test_general_formulas_against_sympy():
    a, b, T = sp.symbols("alpha beta T")
    g2 = (T ** 4 - 8 * b * T ** 2 - 24 * a ** 2 * T + 16 * b ** 2) / (12 * a ** 2)
    lam = (T ** 2 / 4 - b) / (3 * a)
    # T = 6 lambda^2 - g2/2 identically
    assert sp.simplify(6 * lam ** 2 - g2 / 2 - T) == 0
    for vals in [(1, 1, 4), (1331, 119790, 869), (F(-1, 2), 1, F(-17, 4)), (3, -2, F(5, 7))]:
        c = curve_from_invariants(*vals)
        sub = dict(zip((a, b, T), (sp.Rational(str(v)) for v in vals)))
        assert sp.Rational(str(c.g2)) == g2.subs(sub)


def test_sequence_points_somos4():
    o = generate(SomosRecurrence.somos4(1, 1), [1, 1, 1, 1], lo=-3, hi=6)
    P, Q = sequence_points(o, 1, 1)
    s = ExtElem.generator(2, 1)
    assert P == Point(ExtElem.scalar(1, 2, 1), s)
    assert Q.x == F(1, 4) and Q.y == s * F(1, 4)
    c = curve_from_invariants(1, 1, 4)
    assert c.contains(P) and c.contains(Q)


def test_n1_family_point():
    inv = somos4_invariants(-1, 1, [1, -1, 1, 1])
    # A0 = 0 here, so Q is undefined; P is (lambda, s) with s^2 = -1
    assert inv.lam == 0
    c = curve_from_invariants(-1, 1, inv.T)
    s = ExtElem.generator(2, -1)
    P = Point(ExtElem.scalar(0, 2, -1), s)
    assert c.contains(P) and (c.g2, c.g3) == (4, 1)


def test_group_law():
    c = curve_from_invariants(1, 1, 4)
    s = ExtElem.generator(2, 1)
    P = Point(ExtElem.scalar(1, 2, 1), s)
    O = Point.infinity()
    assert ec_add(P, O, c) == P
    assert ec_add(O, P, c) == P
    two = ec_add(P, P, c)
    assert two.x == 2
    Q = Point(ExtElem.scalar(F(1, 4), 2, 1), s * F(1, 4))
    R = ec_add(Q, P, c)
    assert R.x == -1 and R.y == s
    assert ec_mul(3, P, c) == ec_add(two, P, c)
    assert ec_mul(-2, P, c) == Point(two.x, -two.y)
    assert ec_add(P, Point(P.x, -P.y), c).is_infinity
    with pytest.raises(PointNotOnCurve):
        ec_add(Point(ExtElem.scalar(1, 2, 1), ExtElem.scalar(2, 2, 1)), P, c)


@pytest.mark.parametrize(
    "alpha,beta,inits,lo,hi",
    [(1, 1, [1, 1, 1, 1], -3, 8), (1331, 119790, [1, 3, 121, 177023], -2, 6), (2, -3, [1, 2, 3, 5], -3, 6)],
)
def test_verify_correspondence(alpha, beta, inits, lo, hi):
    o = generate(SomosRecurrence.somos4(alpha, beta), inits)
    rep = verify_correspondence(o, lo, hi)
    assert rep.ok and rep.checked == list(range(lo, hi + 1))


@settings(max_examples=100, deadline=None)
@given(rationals, rationals, st.lists(rationals, min_size=4, max_size=4))
def test_t_window_independence(a, b, inits):
    try:
        o = generate(SomosRecurrence.somos4(a, b), inits, lo=-3, hi=8)
    except ZeroPivot:
        return
    ts = set()
    for n in range(-3, 5):
        w = o.window(n, 5)
        if any(v == 0 for v in w):
            continue
        ts.add(t_four_term(a, b, w[1:]))
        ts.add(t_ratio_form(a, b, w[1:]))
        ts.add(t_five_term(a, w))
    assert len(ts) <= 1


@settings(max_examples=100, deadline=None)
@given(rationals, rationals, st.lists(rationals, min_size=5, max_size=5))
def test_j_tilde_window_independence(a, b, inits):
    try:
        o = generate(SomosRecurrence.somos5(a, b), inits, lo=-3, hi=9)
    except ZeroPivot:
        return
    js = {j_tilde(a, b, o.window(n, 5)).J for n in range(-3, 5) if all(o.window(n, 5))}
    assert len(js) <= 1


@settings(max_examples=100, deadline=None)
@given(rationals, rationals, st.lists(rationals, min_size=4, max_size=4), rationals)
def test_covariance_preserves_j(a, b, inits, c):
    o = generate(SomosRecurrence.somos4(a, b), inits)
    if any(v == 0 for v in inits):
        return
    T = t_invariant(a, b, inits)
    rec, o2 = covariance_apply(o, c)
    T2 = t_invariant(rec.alpha, rec.beta, o2.window(1, 4))
    assert T2 == c ** 4 * T
    j1 = curve_from_invariants(a, b, T).j
    j2 = curve_from_invariants(rec.alpha, rec.beta, T2).j
    assert (j1 is INFINITE and j2 is INFINITE) or j1 == j2


@settings(max_examples=100, deadline=None)
@given(rationals, rationals, st.lists(rationals, min_size=4, max_size=4))
def test_points_on_curve_and_doubling_relation(a, b, inits):
    try:
        o = generate(SomosRecurrence.somos4(a, b), inits, lo=-3, hi=7)
    except ZeroPivot:
        return
    if any(v == 0 for v in o.values()):
        return
    T = t_invariant(a, b, inits)
    c = curve_from_invariants(a, b, T)
    if c.discriminant == 0:
        return
    P, Q = sequence_points(o, a, b)
    assert c.contains(P) and c.contains(Q)
    lam = lambda_invariant(a, b, T)
    two = ec_mul(2, P, c)
    if not two.is_infinity:
        assert b == a * (two.x - lam)
    for n in range(-2, 4):
        R = ec_add(Q, ec_mul(n, P, c), c)
        assert R.is_infinity or c.contains(R)
