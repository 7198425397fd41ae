"""Exact arithmetic toolkit for Somos 4/5/8 recurrences, their elliptic curves
and companion elliptic divisibility sequences."""

from .errors import *  # noqa: F401,F403
from .rings import ExtElem, Fraction, LaurentPoly, exact_div, format_rational, normalize, parse_rational
from .core import (
    SomosOrbit,
    SomosRecurrence,
    covariance_apply,
    extend,
    gauge_apply,
    generate,
    qrt_invariant,
    qrt_step,
    somos4_coefficients_from_terms,
    to_f_sequence,
)
from .curve import (
    INFINITE,
    CurveData,
    Point,
    curve_from_invariants,
    ec_add,
    ec_mul,
    j_tilde,
    n_family_curve,
    sequence_points,
    somos4_invariants,
    t_invariant,
    verify_correspondence,
)
from .eds import (
    EdsBlock,
    EdsSequence,
    companion_of_somos4,
    companion_of_somos5,
    divisibility_check,
    divpoly_from_curve,
    eds_double_step,
    fast_somos_term,
    somos_hankel_check,
    ward_identity_check,
)
from .integrality import (
    Verdict,
    check_cor_somos4,
    check_cor_somos5,
    check_thm_gcd,
    family_abcde,
    gap_lengths,
    n_family,
)
from .diophantine import (
    QuarticInstance,
    QuinticInstance,
    quartic_residual,
    quintic_residual,
    stream_quartic,
    stream_quintic,
)
from .growth import fit_quadratic_growth, log_height, somos8_experiment

__version__ = "0.1.0"
