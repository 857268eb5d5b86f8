from __future__ import annotations

import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from stekbound import tube
from stekbound.errors import DomainError
from stekbound.hypgeom import PinchedClass, dist_function_r, hyperbolic_ball_volume, sphere_volume

H3 = PinchedClass(3, 1.0)
A_HALF = 2 * math.pi * math.exp(-1) / math.sinh(1)  # width exactly 1/2 in dimension 3


def test_pinned_width():
    assert tube.width(H3, A_HALF).width == pytest.approx(0.5, abs=1e-12)


def test_decimal_pinned_area_is_close_but_not_exact():
    # 1.967007 is a rounded value of A_HALF = 1.96685870...
    assert tube.width(H3, 1.967007).width == pytest.approx(0.5, abs=1e-4)
    assert abs(tube.width(H3, 1.967007).width - 0.5) > 1e-6


@settings(max_examples=40, deadline=None)
@given(st.floats(min_value=1e-3, max_value=5.0))
def test_dimension_three_closed_relation(w):
    # for n = 3, kappa = 1: A = 2 pi e^{-2w} / sinh(2w)
    A = 2 * math.pi * math.exp(-2 * w) / math.sinh(2 * w)
    assert tube.width(H3, A).width == pytest.approx(w, rel=1e-9)


@pytest.mark.parametrize(
    "n, kappa, A", [(3, 0.5, 10.0), (4, 1.0, 0.3), (5, 0.25, 1e4), (7, 0.5, 123.0), (4, 0.5, 1e7)]
)
def test_width_against_mpmath(n, kappa, A):
    assert tube.width(PinchedClass(n, kappa), A).width == pytest.approx(
        oracles.width(n, kappa, A), rel=1e-10
    )


def test_width_result_fields():
    res = tube.width(PinchedClass(4, 0.5), 50.0)
    assert res.residual <= 1e-10 * 50.0
    assert res.iterations > 0


@pytest.mark.parametrize("A", [0.0, -1.0, math.nan, math.inf, "3"])
def test_width_rejects_bad_area(A):
    with pytest.raises(DomainError):
        tube.width(H3, A)


@pytest.mark.parametrize("n", [3, 4, 5, 7])
@pytest.mark.parametrize("kappa", [0.25, 0.5, 1.0])
def test_width_monotone(n, kappa):
    areas = np.logspace(-2, 8, 25)
    widths = [tube.width(PinchedClass(n, kappa), float(A)).width for A in areas]
    assert all(b < a for a, b in zip(widths, widths[1:]))
    if kappa < 1.0:
        stiffer = [tube.width(PinchedClass(n, 2 * kappa), float(A)).width for A in areas]
        assert all(s > w for s, w in zip(stiffer, widths))
    # separating variant: halving the volume widens the tube
    assert tube.width(PinchedClass(n, kappa), 5.0).width > tube.width(PinchedClass(n, kappa), 10.0).width


# --- closed-form lower bound ----------------------------------------------------


def test_closed_form_value_against_mpmath():
    n, kappa, x = 3, 1.0, 100.0
    d = n - 2
    z = (d * mp.mpf(4) ** d / (2 * mp.pi) * x + mp.mpf(2) ** (mp.mpf(d) / 2)) ** (1 / (kappa * d))
    assert tube.width_closed_form_lower(H3, x) == pytest.approx(float(mp.acoth(z)), rel=1e-13)


@pytest.mark.parametrize("n", [3, 4, 5, 7])
@pytest.mark.parametrize("kappa", [0.25, 0.5, 1.0])
def test_closed_form_below_width(n, kappa):
    cls = PinchedClass(n, kappa)
    for x in np.logspace(0, 6, 100):
        assert tube.width_closed_form_lower(cls, float(x)) <= tube.width(cls, float(x)).width


def test_displayed_double_form_would_exceed_width():
    # log(1 + 2/(z-1)) = 2 arcoth(z) overshoots the true width; the halved
    # form is the one the derivation supports
    x = 100.0
    doubled = 2 * tube.width_closed_form_lower(H3, x)
    assert doubled > tube.width(H3, x).width


def test_closed_form_asymptotic_constant():
    ratios = [tube.width_closed_form_lower(H3, x) * x ** (1.0 / (1.0 * 1)) for x in (1e8, 1e10)]
    assert abs(ratios[1] / ratios[0] - 1) < 0.05


def test_closed_form_constant_via_sphere_volume():
    # leading behaviour z ~ (c x)^{1/(kappa d)} with c = d 4^d kappa^{n-1} / vol(S^d)
    cls = PinchedClass(5, 1.0)
    x = 1e12
    c = 3 * 4.0**3 / sphere_volume(3)
    assert tube.width_closed_form_lower(cls, x) == pytest.approx((c * x) ** (-1 / 3), rel=1e-3)


def test_closed_form_rejects_bad_input():
    with pytest.raises(DomainError):
        tube.width_closed_form_lower(H3, 0.0)


# --- tube volumes ---------------------------------------------------------------


def test_tube_volume_antiderivative():
    bounds = tube.tube_volume_bounds(H3, A_HALF)
    exact = 2 * A_HALF * (0.25 + math.sinh(1.0) / 4)
    assert bounds.lower == pytest.approx(exact, rel=1e-11)
    assert bounds.upper == bounds.lower


def test_tube_volume_lemma_value():
    # A (e - 1) / (kappa (n-1) 2^{n-2}) with w = 1/2, n = 3, kappa = 1
    assert tube.tube_volume_lower_lemma(H3, A_HALF) == pytest.approx(A_HALF * (math.e - 1) / 4, rel=1e-11)


@pytest.mark.parametrize("n", [3, 4, 6])
@pytest.mark.parametrize("kappa", [0.25, 0.5, 1.0])
@pytest.mark.parametrize("A", [0.05, 3.0, 1e3, 1e6])
def test_tube_volume_chain(n, kappa, A):
    cls = PinchedClass(n, kappa)
    b = tube.tube_volume_bounds(cls, A)
    lemma = tube.tube_volume_lower_lemma(cls, A)
    w = tube.width(cls, A).width
    assert b.lower <= b.upper * (1 + 1e-12)
    assert A * w / 2 ** (n - 2) <= lemma <= b.lower


@pytest.mark.parametrize("n, kappa", [(4, 1.0), (5, 0.75), (7, 0.25)])
def test_tube_lower_bound_diverges(n, kappa):
    assert kappa * (n - 2) > 1
    cls = PinchedClass(n, kappa)
    assert tube.tube_volume_lower_lemma(cls, 1e6 * 2.0) > 10 * tube.tube_volume_lower_lemma(cls, 2.0)


# --- trigonometry and disjointness ------------------------------------------------


def test_ideal_triangle_leg_values():
    assert tube.ideal_triangle_leg(math.pi / 4) == pytest.approx(math.log(1 + math.sqrt(2)), rel=1e-15)
    assert tube.ideal_triangle_leg(math.pi / 6) == pytest.approx(float(mp.asinh(mp.sqrt(3))), rel=1e-15)
    assert tube.ideal_triangle_leg(1.57) < 1e-3


@given(st.floats(min_value=1e-3, max_value=math.pi / 2 - 1e-3))
def test_ideal_triangle_identities(phi):
    r = tube.ideal_triangle_leg(phi)
    assert math.sinh(r) * math.tan(phi) == pytest.approx(1.0, rel=1e-14)
    other = tube.ideal_triangle_leg(math.pi / 2 - phi)
    assert math.sinh(r) * math.sinh(other) == pytest.approx(1.0, rel=1e-13)


@pytest.mark.parametrize("phi", [0.0, math.pi / 2, -1.0, 2.0])
def test_ideal_triangle_rejects(phi):
    with pytest.raises(DomainError):
        tube.ideal_triangle_leg(phi)


def test_disjointness_gap():
    assert tube.disjointness_gap(H3, A_HALF, A_HALF) == pytest.approx(1.0, abs=1e-12)
    cls = PinchedClass(5, 0.5)
    gap = tube.disjointness_gap(cls, 7.0, 7.0)
    assert gap == 2 * tube.width(cls, 7.0).width
    assert gap >= 2 * tube.width_closed_form_lower(cls, 7.0)
    assert tube.disjointness_gap(cls, 3.0, 9.0) == tube.width(cls, 3.0).width + tube.width(cls, 9.0).width


def test_round_trip_through_ball_volume():
    cls = PinchedClass(4, 0.5)
    for A in (0.01, 1.0, 1e5, 1e8):
        w = tube.width(cls, A).width
        assert hyperbolic_ball_volume(3, 0.5, dist_function_r(2 * w)) == pytest.approx(A, rel=1e-9)
