from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from somos import SomosRecurrence, generate
from somos.core import (
    covariance_apply,
    extend,
    gauge_apply,
    qrt_invariant,
    qrt_step,
    somos4_coefficients_from_terms,
    to_f_sequence,
)
from somos.errors import InconsistentWindow, MissingIndex, ZeroGaugeParameter, ZeroPivot

SOMOS4_FORWARD = [1, 1, 1, 1, 2, 3, 7, 23, 59, 314, 1529, 8209, 83313]

nonzero = st.integers(-5, 5).filter(bool)
rationals = st.fractions(min_value=-5, max_value=5, max_denominator=5).filter(bool)


def test_somos4_forward_and_backward():
    o = generate(SomosRecurrence.somos4(1, 1), [1, 1, 1, 1], lo=-4, hi=13)
    assert o[1:14] == SOMOS4_FORWARD
    assert o[-4:1] == [59, 23, 7, 3, 2]


def test_alpha_1331_window():
    o = generate(SomosRecurrence.somos4(1331, 119790), [1, 3, 121, 177023], lo=-2, hi=5)
    assert o.values() == [2498287, 1221, 7, 1, 3, 121, 177023, 2460698229]


def test_somos5_and_somos8_iterates():
    o5 = generate(SomosRecurrence.somos5(1, 1), [1] * 5, hi=12)
    assert o5[6:13] == [2, 3, 5, 11, 37, 83, 274]
    o8 = generate(SomosRecurrence.somos8(), [1] * 8, hi=13)
    assert o8[9:14] == [4, 7, 13, 25, 61]


def test_recurrence_validation():
    with pytest.raises(ValueError):
        SomosRecurrence(6, (1, 1, 1))
    with pytest.raises(ValueError):
        SomosRecurrence(4, (1,))
    with pytest.raises(ValueError):
        SomosRecurrence(8, (1, 2, 1, 1))


def test_zero_pivot_names_index():
    with pytest.raises(ZeroPivot) as exc:
        generate(SomosRecurrence.somos4(1, -1), [1, 1, 1, 1], hi=12)
    assert exc.value.index is not None
    with pytest.raises(ZeroPivot) as exc:
        generate(SomosRecurrence.somos4(1, 1), [0, 1, 1, 1], hi=6)
    assert exc.value.index == 1


def test_orbit_access():
    o = generate(SomosRecurrence.somos4(1, 1), [1, 1, 1, 1], hi=8)
    with pytest.raises(MissingIndex):
        o[9]
    assert 8 in o and 0 not in o
    assert o.window(5, 3) == [2, 3, 7]
    assert o.to_json()[4] == {"index": 5, "value": "2"}
    wider = extend(o, lo=-2, hi=10)
    assert wider[-2] == 7 and wider[10] == 314


@settings(max_examples=120, deadline=None)
@given(rationals, rationals, st.lists(rationals, min_size=4, max_size=4))
def test_residuals_vanish(a, b, inits):
    try:
        o = generate(SomosRecurrence.somos4(a, b), inits, lo=-4, hi=10)
    except ZeroPivot:
        return
    assert all(r == 0 for r in o.residuals().values())


@settings(max_examples=100, deadline=None)
@given(rationals, rationals, st.lists(rationals, min_size=4, max_size=4), rationals, rationals)
def test_gauge_preserves_recurrence(a, b, inits, ga, gb):
    try:
        o = generate(SomosRecurrence.somos4(a, b), inits, lo=-2, hi=9)
    except ZeroPivot:
        return
    g = gauge_apply(o, ga, gb)
    assert all(r == 0 for r in g.residuals().values())
    assert g[3] == ga * gb ** 3 * o[3]


def test_gauge_zero_parameter():
    o = generate(SomosRecurrence.somos4(1, 1), [1, 1, 1, 1])
    with pytest.raises(ZeroGaugeParameter):
        gauge_apply(o, 0, 1)


def test_covariance():
    o = generate(SomosRecurrence.somos4(1, 1), [1, 1, 1, 1], lo=-3, hi=10)
    rec, c = covariance_apply(o, 2)
    assert rec.coefficients == (64, 256)
    assert all(r == 0 for r in c.residuals().values())
    assert c[3] == 2 ** 9


def test_qrt_map_and_invariant():
    o = generate(SomosRecurrence.somos4(1331, 119790), [1, 3, 121, 177023], lo=-3, hi=12)
    f = to_f_sequence(o)
    vals = {qrt_invariant(f[n], f[n + 1], 1331, 119790) for n in range(-2, 10)}
    assert vals == {869}
    for n in range(-1, 10):
        assert qrt_step(f[n - 1], f[n], 1331, 119790) == f[n + 1]


def test_coefficients_from_terms():
    o = generate(SomosRecurrence.somos4(Fraction(-1, 2), 1), [1, -2, 2, 1], hi=10)
    assert somos4_coefficients_from_terms(o[1:11]) == (Fraction(-1, 2), 1)
    with pytest.raises(InconsistentWindow):
        somos4_coefficients_from_terms([1, 1, 1, 1, 2, 3, 8])


@settings(max_examples=100, deadline=None)
@given(rationals, rationals, st.lists(rationals, min_size=4, max_size=4))
def test_forward_then_backward_round_trip(a, b, inits):
    rec = SomosRecurrence.somos4(a, b)
    try:
        o = generate(rec, inits, hi=10)
        back = generate(rec, o[7:11], lo=1, start=7)
    except ZeroPivot:
        return
    assert back[1:5] == list(inits)
