from fractions import Fraction
from math import gcd

import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

from somos.diophantine import (
    QuarticInstance,
    QuinticInstance,
    projective_key,
    quartic_residual,
    quintic_residual,
    stream_quartic,
    stream_quintic,
)
from somos.errors import Periodic, ZeroPivot

rationals = st.fractions(min_value=-4, max_value=4, max_denominator=3).filter(bool)


def test_quartic_polynomial_matches_t_formula():
    a, b, s, t, u, v = sp.symbols("alpha beta s t u v")
    T = (s ** 2 * v ** 2 + a * (t ** 3 * v + s * u ** 3) + b * t ** 2 * u ** 2) / (s * t * u * v)
    inst = QuarticInstance(2, 3, Fraction(7, 5))
    pt = (1, 2, 3, 4)
    want = (s ** 2 * v ** 2 + a * (s * u ** 3 + t ** 3 * v) + b * t * t * u * u - T * s * t * u * v)
    assert sp.simplify(want) == 0
    assert quartic_residual(inst, pt) == 4 ** 2 + 2 * (27 + 32) + 3 * 36 - Fraction(7, 5) * 24


def test_stream_alpha_1331():
    inst = QuarticInstance.from_orbit_data(1331, 119790, [1, 3, 121, 177023])
    assert inst.T == 869
    sols = stream_quartic(inst, [1, 3, 121, 177023], 12)
    assert [s.index for s in sols] == list(range(1, 13))
    assert all(s.residual == 0 for s in sols)
    assert sols[0].window == (1, 3, 121, 177023) and sols[0].primitive


def test_stream_quintic_somos5():
    inst = QuinticInstance.from_orbit_data(1, 1, [1] * 5)
    assert inst.J == 5
    sols = stream_quintic(inst, [1] * 5, 15, primitive_only=True)
    assert len(sols) == 15 and all(s.residual == 0 and s.gcd == 1 for s in sols)


def test_periodic_orbits_raise():
    with pytest.raises(Periodic) as exc:
        stream_quartic(QuarticInstance.from_orbit_data(-1, 2, [1, 1, 1, 1]), [1, 1, 1, 1], 5)
    assert exc.value.period == 1
    with pytest.raises(Periodic) as exc:
        stream_quartic(QuarticInstance.from_orbit_data(1, 2, [1, 1, -1, -1]), [1, 1, -1, -1], 5)
    assert exc.value.period == 2


def test_projective_key():
    assert projective_key((Fraction(1, 2), 1, -Fraction(3, 2))) == (1, 2, -3)
    assert projective_key((-2, -4, 6)) == (1, 2, -3)


@settings(max_examples=100, deadline=None)
@given(rationals, rationals, st.lists(rationals, min_size=4, max_size=4))
def test_quartic_residual_zero_on_windows(a, b, inits):
    inst = QuarticInstance.from_orbit_data(a, b, inits)
    try:
        sols = stream_quartic(inst, inits, 6)
    except (Periodic, ZeroPivot):
        return
    assert all(s.residual == 0 for s in sols)


@settings(max_examples=100, deadline=None)
@given(rationals, rationals, st.lists(rationals, min_size=5, max_size=5))
def test_quintic_residual_zero_on_windows(a, b, inits):
    inst = QuinticInstance.from_orbit_data(a, b, inits)
    try:
        sols = stream_quintic(inst, inits, 6)
    except (Periodic, ZeroPivot):
        return
    assert all(s.residual == 0 for s in sols)


def test_primitivity_and_conservation():
    inst = QuarticInstance.from_orbit_data(2, 3, [1, 2, 3, 4])
    sols = stream_quartic(inst, [1, 2, 3, 4], 8)
    for s in sols:
        if all(Fraction(x).denominator == 1 for x in s.window):
            g = 0
            for x in s.window:
                g = gcd(g, int(x))
            assert s.gcd == g and s.primitive == (g == 1)
    # residual is the same for every window, even against a wrong T
    wrong = QuarticInstance(2, 3, inst.T + 1)
    res = {quartic_residual(wrong, s.window) / (s.window[0] * s.window[1] * s.window[2] * s.window[3]) for s in sols}
    assert res == {-1}
