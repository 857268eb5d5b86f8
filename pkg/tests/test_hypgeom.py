from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from stekbound import hypgeom
from stekbound.errors import BracketError, ConvergenceError, DomainError, RangeError
from stekbound.hypgeom import PinchedClass, QuadratureSpec, RootFindSpec


# --- Gauss-Kronrod rule ------------------------------------------------------


def test_gauss_nodes_match_legendre():
    nodes, weights = np.polynomial.legendre.leggauss(7)
    np.testing.assert_allclose(np.sort(hypgeom._NODES[1::2]), nodes, atol=1e-15)
    np.testing.assert_allclose(hypgeom._GAUSS_W[1::2], weights[np.argsort(nodes)], atol=1e-15)
    assert np.all(hypgeom._GAUSS_W[0::2] == 0)


@pytest.mark.parametrize("degree", range(0, 23))
def test_kronrod_exact_to_degree_22(degree):
    exact = 0.0 if degree % 2 else 2.0 / (degree + 1)
    value = float(hypgeom._KRONROD_W @ hypgeom._NODES**degree)
    assert value == pytest.approx(exact, abs=1e-15)


def test_gauss_part_exact_to_degree_13_only():
    assert float(hypgeom._GAUSS_W @ hypgeom._NODES**12) == pytest.approx(2 / 13, abs=1e-15)
    assert abs(float(hypgeom._GAUSS_W @ hypgeom._NODES**14) - 2 / 15) > 1e-6


# --- adaptive quadrature ------------------------------------------------------


@pytest.mark.parametrize(
    "f, a, b, exact",
    [
        (np.sin, 0.0, math.pi, 2.0),
        (np.exp, -3.0, 2.0, math.exp(2) - math.exp(-3)),
        (lambda x: 1 / (1 + x * x), 0.0, 50.0, math.atan(50.0)),
        (lambda x: np.sqrt(x), 0.0, 1.0, 2 / 3),
        (lambda x: np.cosh(0.5 * x) ** -3, 0.0, 2.0, oracles.sech_power_integral(3, 0.5, 2.0)),
    ],
)
def test_adaptive_quad_accuracy(f, a, b, exact):
    value, err = hypgeom.adaptive_quad(f, a, b)
    assert value == pytest.approx(exact, rel=1e-11)
    assert err <= 1e-10 * abs(exact)


def test_adaptive_quad_reports_partial_result():
    spec = QuadratureSpec(max_subdivisions=10)
    with pytest.raises(ConvergenceError) as info:
        hypgeom.adaptive_quad(lambda x: 1 / np.sqrt(np.abs(x - 0.3)), 0.0, 1.0, spec)
    assert info.value.estimate == pytest.approx(2 * (math.sqrt(0.3) + math.sqrt(0.7)), rel=0.05)
    assert info.value.error > 0


def test_adaptive_quad_empty_interval():
    assert hypgeom.adaptive_quad(np.exp, 1.0, 1.0) == (0.0, 0.0)


@pytest.mark.parametrize("kwargs", [{"rel_tol": 0}, {"abs_tol": -1}, {"max_subdivisions": 0}])
def test_quadrature_spec_validation(kwargs):
    with pytest.raises(DomainError):
        QuadratureSpec(**kwargs)


# --- sphere and ball volumes --------------------------------------------------


def test_sphere_and_euclidean_volumes():
    assert hypgeom.sphere_volume(1) == pytest.approx(2 * math.pi)
    assert hypgeom.sphere_volume(2) == pytest.approx(4 * math.pi)
    assert hypgeom.sphere_volume(3) == pytest.approx(2 * math.pi**2)
    assert hypgeom.euclidean_ball_volume(3) == pytest.approx(4 * math.pi / 3)


@pytest.mark.parametrize("kappa", [0.25, 0.5, 1.0])
@pytest.mark.parametrize("r", [0.01, 1.0, 7.5])
def test_ball_volume_closed_forms(kappa, r):
    two = 2 * math.pi * (math.cosh(kappa * r) - 1) / kappa**2
    three = math.pi * (math.sinh(2 * kappa * r) - 2 * kappa * r) / kappa**3
    assert hypgeom.hyperbolic_ball_volume(2, kappa, r) == pytest.approx(two, rel=1e-12)
    assert hypgeom.hyperbolic_ball_volume(3, kappa, r) == pytest.approx(three, rel=1e-11)


@pytest.mark.parametrize("m, kappa, r", [(4, 0.5, 3.0), (6, 1.0, 2.0), (6, 0.25, 10.0)])
def test_ball_volume_against_mpmath(m, kappa, r):
    assert hypgeom.hyperbolic_ball_volume(m, kappa, r) == pytest.approx(
        oracles.ball_volume(m, kappa, r), rel=1e-11
    )


def test_ball_volume_edge_cases():
    assert hypgeom.hyperbolic_ball_volume(3, 1.0, 0.0) == 0.0
    assert hypgeom.hyperbolic_ball_volume(1, 1.0, 2.0) == 4.0
    with pytest.raises(DomainError):
        hypgeom.hyperbolic_ball_volume(3, 1.0, -1.0)
    with pytest.raises(DomainError):
        hypgeom.hyperbolic_ball_volume(3, 1.5, 1.0)


# --- r(a) = log coth(a/2) -------------------------------------------------------


def test_dist_function_values():
    assert hypgeom.dist_function_r(1.0) == pytest.approx(0.7719368329, rel=1e-9)
    assert hypgeom.dist_function_r(1.0) == pytest.approx(float(oracles.r_of(1.0)), rel=1e-14)
    assert hypgeom.dist_function_r(10.0) == pytest.approx(float(oracles.r_of(10.0)), rel=1e-14)
    assert hypgeom.dist_function_r(800.0) == pytest.approx(2 * math.exp(-800.0), rel=1e-14)
    with pytest.raises(DomainError):
        hypgeom.dist_function_r(0.0)


@given(st.floats(min_value=1e-3, max_value=30.0))
def test_dist_function_is_involution(a):
    assert hypgeom.dist_function_r(hypgeom.dist_function_r(a)) == pytest.approx(a, rel=1e-12)


@given(st.floats(min_value=1e-3, max_value=30.0))
def test_dist_function_sinh_identity(a):
    assert math.sinh(a) * math.sinh(hypgeom.dist_function_r(a)) == pytest.approx(1.0, rel=1e-12)


# --- monotone inversion ---------------------------------------------------------


def test_invert_cube():
    assert hypgeom.monotone_invert(lambda x: x**3, 8.0) == pytest.approx(2.0, rel=1e-12)


def test_invert_decreasing_and_iterations():
    x, iterations = hypgeom.monotone_invert(lambda x: -(x**3), -8.0, full_output=True)
    assert x == pytest.approx(2.0, rel=1e-12)
    assert 0 < iterations <= RootFindSpec().max_iter


def test_invert_on_finite_domain():
    x = hypgeom.monotone_invert(math.log, -20.0, domain=(0.0, math.inf), x0=1.0)
    assert x == pytest.approx(math.exp(-20.0), rel=1e-10)


def test_invert_out_of_range():
    with pytest.raises(RangeError):
        hypgeom.monotone_invert(lambda x: x, 5.0, domain=(0.0, 1.0))
    with pytest.raises(BracketError):
        hypgeom.monotone_invert(math.tanh, 2.0)


@settings(max_examples=60, deadline=None)
@given(
    st.floats(0.1, 3.0), st.floats(0.0, 2.0), st.floats(-50.0, 50.0), st.floats(-5.0, 5.0)
)
def test_invert_round_trip(a, b, target, x0):
    def f(x):
        return a * x + b * math.sinh(x)

    x = hypgeom.monotone_invert(f, target, x0=x0)
    assert f(x) == pytest.approx(target, rel=1e-9, abs=1e-9)


# --- PinchedClass ---------------------------------------------------------------


@pytest.mark.parametrize("n, kappa", [(2, 1.0), (3.5, 1.0), (True, 1.0), (3, 0.0), (3, 1.2), (3, math.nan)])
def test_pinched_class_rejects(n, kappa):
    with pytest.raises(DomainError):
        PinchedClass(n, kappa)


def test_pinched_class_normalises():
    cls = PinchedClass(4.0, 1)
    assert isinstance(cls.n, int) and isinstance(cls.kappa, float)
    assert cls == PinchedClass(4, 1.0)
