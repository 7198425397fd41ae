from fractions import Fraction
import random
from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from somos import SomosRecurrence, generate
from somos.errors import ConstraintViolated, NonIntegerOrbit, ZeroParameter, ZeroPivot
from somos.integrality import (
    Verdict,
    check_cor_somos4,
    check_cor_somos5,
    check_thm_gcd,
    family_abcde,
    gap_lengths,
    n_family,
)
from somos.rings import is_integral
from somos.symbolic import n_family_symbolic

F = Fraction


def test_cor_somos4_examples():
    assert check_cor_somos4(1331, 119790, [1, 3, 121, 177023]).verdict is Verdict.INTEGRAL_BIDIRECTIONAL
    assert check_cor_somos4(1, 1, [1, 1, 1, 1]).verdict is Verdict.INTEGRAL_BIDIRECTIONAL
    rep = check_cor_somos4(1331, 119790, [2498287, 1221, 7, 1, 3, 121, 177023])
    assert rep.verdict is Verdict.INTEGRAL_BIDIRECTIONAL
    assert rep.hypothesis("beta*T integral").witness == 104097510


def test_cor_somos4_inconclusive_never_negative():
    rep = check_cor_somos4(F(-1, 2), 1, [1, -2, 2, 1])
    assert rep.verdict is Verdict.INCONCLUSIVE
    assert not rep.hypothesis("alpha integral").holds
    rep = check_cor_somos4(1, 1, [2, 1, 1, 1])
    assert rep.verdict is Verdict.INCONCLUSIVE
    assert rep.to_json()["verdict"] == "Inconclusive"


def test_cor_somos4_forward_only():
    # A0 = (alpha A3 A1 + beta A2^2)/A4 = 3/4
    rep = check_cor_somos4(1, 1, [1, 1, 2, 4])
    assert rep.verdict is Verdict.INTEGRAL_FORWARD
    o = generate(SomosRecurrence.somos4(1, 1), [1, 1, 2, 4], hi=30)
    assert all(is_integral(v) for v in o.values())


def test_gcd_criterion():
    assert check_thm_gcd(1, 1, [1, 1, 1, 1]).verdict is Verdict.INTEGRAL_BIDIRECTIONAL
    assert check_thm_gcd(1, 1, [7, 3, 2, 1, 1, 1, 1, 2]).verdict is Verdict.INTEGRAL_BIDIRECTIONAL
    assert check_thm_gcd(2, 2, [1, 1, 1, 1]).verdict is Verdict.INCONCLUSIVE
    rep = check_thm_gcd(1331, 119790, [1, 3, 121, 177023])
    assert rep.verdict is Verdict.INCONCLUSIVE
    assert rep.hypothesis("gcd(alpha, beta) = 1").witness == gcd(1331, 119790) == 1331


def test_cor_somos5_alpha_14641():
    rep = check_cor_somos5(14641, 1771561, [1, 1, 33, 6655, 19487171])
    assert rep.verdict is Verdict.INTEGRAL_BIDIRECTIONAL
    assert rep.hypothesis("alpha*J integral").witness == 9179907
    rep = check_cor_somos5(14641, 1771561, [805255, 847, 8, 1, 1, 33, 6655, 19487171])
    assert rep.verdict is Verdict.INTEGRAL_BIDIRECTIONAL
    assert check_cor_somos5(1, 1, [1, 1, 1, 1, 1]).verdict is Verdict.INTEGRAL_BIDIRECTIONAL
    assert check_cor_somos5(1, 1, [1, 2, 1, 1, 1]).verdict is Verdict.INCONCLUSIVE


def test_family_examples():
    m = family_abcde(3, 30, 11, 7, 133)
    assert m.recurrence.coefficients == (1331, 119790)
    assert m.inits == (1, 3, 121, 177023)
    assert m.window == (2498287, 1221, 7, 1, 3, 121, 177023, 2460698229)
    assert m.beta_T == 104097510
    m = family_abcde(1, 1, 1, 2, 1)
    assert m.window == (7, 3, 2, 1, 1, 1, 1, 2)
    with pytest.raises(ConstraintViolated):
        family_abcde(1, 1, 1, 1, 1)


@settings(max_examples=100, deadline=None)
@given(st.integers(-5, 5).filter(bool), st.integers(-5, 5).filter(bool), st.integers(-4, 4).filter(bool),
       st.integers(1, 6))
def test_family_members_are_integral(a, d, e, b):
    n = a ** 3 * d + e * e
    if n == 0 or n % b:
        return
    m = family_abcde(a, d, e, b, n // b)
    rep = check_cor_somos4(m.recurrence.alpha, m.recurrence.beta, m.inits)
    assert rep.verdict is Verdict.INTEGRAL_BIDIRECTIONAL
    try:
        o = generate(m.recurrence, m.inits, lo=-8, hi=16)
    except ZeroPivot:
        return  # a zero term stops iteration; the criterion only concerns defined terms
    assert all(is_integral(v) for v in o.values())


def test_n_family_values_and_gaps():
    o = n_family(1, lo=0, hi=15)
    assert o[0] == 0
    o2 = n_family(2, lo=-1, hi=12)
    assert o2.values() == [2, 3, 1, -2, 2, 1, 5, 2, 12, -26, 34, 236, 352, -1912]
    o3 = n_family(3, lo=1, hi=40)
    assert (o3[6], o3[7]) == (3, 33)
    assert set(gap_lengths(o3, 3)) == {1, 3}
    with pytest.raises(ZeroParameter):
        n_family(0)


def test_gaps_reject_fractions():
    o = generate(SomosRecurrence.somos4(F(1, 2), 1), [1, 1, 1, 1], hi=8)
    with pytest.raises(NonIntegerOrbit):
        gap_lengths(o, 2)


@settings(max_examples=150, deadline=None)
@given(st.integers(-3, 3).filter(bool), st.integers(-3, 3).filter(bool),
       st.lists(st.integers(-4, 4).filter(bool), min_size=3, max_size=3), st.sampled_from([1, -1]))
def test_forward_verdict_means_integral_iterates(alpha, beta, rest, a1):
    inits = [a1, *rest]
    rep = check_cor_somos4(alpha, beta, inits)
    if rep.verdict is Verdict.INCONCLUSIVE:
        return
    try:
        o = generate(SomosRecurrence.somos4(alpha, beta), inits, hi=60)
    except ZeroPivot:
        return
    assert all(is_integral(v) for v in o.values())


@settings(max_examples=100, deadline=None)
@given(st.integers(-3, 3).filter(bool), st.integers(-3, 3).filter(bool),
       st.lists(st.integers(-4, 4).filter(bool), min_size=3, max_size=3),
       st.sampled_from([1, -1]), st.sampled_from([1, -1]))
def test_somos5_forward_verdict_means_integral_iterates(alpha, beta, rest, t1, t2):
    inits = [t1, t2, *rest]
    rep = check_cor_somos5(alpha, beta, inits)
    if rep.verdict is Verdict.INCONCLUSIVE:
        return
    try:
        o = generate(SomosRecurrence.somos5(alpha, beta), inits, hi=60)
    except ZeroPivot:
        return
    assert all(is_integral(v) for v in o.values())


def test_family_thousand_random_members():
    rng = random.Random(7)
    done = 0
    while done < 1000:
        a, d, e = (rng.choice([v for v in range(-50, 51) if v]) for _ in range(3))
        n = a ** 3 * d + e * e
        divisors = [b for b in range(1, 51) if n % b == 0 and n and abs(n // b) <= 50 and n // b]
        if not divisors:
            continue
        b = rng.choice(divisors)
        m = family_abcde(a, d, e, b, n // b)
        assert check_cor_somos4(m.recurrence.alpha, m.recurrence.beta, m.inits).verdict is Verdict.INTEGRAL_BIDIRECTIONAL
        done += 1


def test_n_family_matches_iteration():
    terms = n_family_symbolic(1, 30)
    for N in (2, 3, -2, F(1, 3), 5):
        o = n_family(N, lo=1, hi=30, terms=terms)
        ref = generate(SomosRecurrence.somos4(-1 / F(N), 1), [1, -N, N, 1], hi=30)
        assert o.values() == ref.values()
    # N = 1 passes through A0 = 0 and reproduces the listed sequence
    o1 = n_family(1, lo=1, hi=15, terms=terms)
    assert o1.values() == [1, -1, 1, 1, 2, 1, 3, -5, 7, 4, 23, 29, 59, -129, 314]
