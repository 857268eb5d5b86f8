"""Width function, tube volumes and ideal-triangle trigonometry.

The width ``w_{n,kappa}(A)`` is half the arc length ``a`` at which the ball
of radius ``r(a) = log coth(a/2)`` in the ``(n-1)``-dimensional space form of
curvature ``-kappa**2`` has volume ``A``.  Since ``r`` is an involution, the
inverse is computed as ``w = r(rho) / 2`` where ``V_{n-1,kappa}(rho) = A``.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .hypgeom import (
    DEFAULT_QUAD,
    DEFAULT_ROOT,
    PinchedClass,
    QuadratureSpec,
    RootFindSpec,
    adaptive_quad,
    dist_function_r,
    euclidean_ball_volume,
    hyperbolic_ball_volume,
    monotone_invert,
    sphere_volume,
)

__all__ = [
    "WidthResult",
    "TubeVolumeBounds",
    "width",
    "width_closed_form_lower",
    "tube_volume_bounds",
    "tube_volume_lower_lemma",
    "ideal_triangle_leg",
    "disjointness_gap",
]

# sinh overflows in binary64 just above 710
_OVERFLOW_ARG = 700.0


@dataclass(frozen=True)
class WidthResult:
    width: float
    residual: float
    iterations: int


@dataclass(frozen=True)
class TubeVolumeBounds:
    lower: float
    upper: float


def _check_area(A: float, name: str = "A") -> float:
    if not (isinstance(A, (int, float)) and math.isfinite(A) and A > 0):
        raise DomainError(f"{name} must be a positive finite volume, got {A!r}")
    return float(A)


def _radius_upper_guess(m: int, kappa: float, A: float) -> float:
    # Both estimates bound the true radius from above: the Euclidean one by
    # volume comparison, the exponential one from sinh(x) >= e^x / 4 for
    # x >= log(2)/2.
    omega = sphere_volume(m - 1)
    euclid = (A / euclidean_ball_volume(m)) ** (1.0 / m)
    p = m - 1
    expo = math.log(A * p * kappa * (4 * kappa) ** p / omega + 2 ** (p / 2)) / (p * kappa)
    return min(euclid, max(expo, math.log(2) / (2 * kappa)))


@functools.lru_cache(maxsize=4096)
def _width(cls: PinchedClass, A: float, quad: QuadratureSpec, root: RootFindSpec):
    m, kappa = cls.n - 1, cls.kappa
    log_target = math.log(A)

    def log_volume(s: float) -> float:
        rho = math.exp(s)
        if kappa * rho > _OVERFLOW_ARG:
            return math.inf
        v = hyperbolic_ball_volume(m, kappa, rho, quad)
        return math.log(v) if v > 0 else -math.inf

    s0 = math.log(_radius_upper_guess(m, kappa, A))
    s, iterations = monotone_invert(
        log_volume, log_target, root, x0=s0, increasing=True, full_output=True
    )
    w = 0.5 * dist_function_r(math.exp(s))
    residual = abs(hyperbolic_ball_volume(m, kappa, dist_function_r(2 * w), quad) - A)
    return WidthResult(width=w, residual=residual, iterations=iterations)


def width(
    cls: PinchedClass,
    A: float,
    quad: QuadratureSpec = DEFAULT_QUAD,
    root: RootFindSpec = DEFAULT_ROOT,
) -> WidthResult:
    """Width of the embedded tubular neighbourhood of a closed totally geodesic
    hypersurface of ``(n-1)``-volume ``A``.

    >>> import math
    >>> A = 2 * math.pi * math.exp(-1) / math.sinh(1)
    >>> round(width(PinchedClass(3, 1.0), A).width, 12)
    0.5
    """
    return _width(cls, _check_area(A), quad, root)


def width_closed_form_lower(cls: PinchedClass, x: float) -> float:
    """Explicit lower bound for the width at hypersurface volume ``x``.

    Comes from bounding ``sinh(kappa t) >= e^{kappa t}/4`` beyond
    ``t = log(2)/(2 kappa)`` inside the ball-volume integral and solving the
    resulting inequality ``coth(y)^{kappa(n-2)} = z^{kappa(n-2)}`` exactly,
    i.e. ``y = arcoth(z) = log(1 + 2/(z - 1)) / 2``.  Decays like
    ``x^{-1/(kappa(n-2))}``.
    """
    x = _check_area(x, "x")
    n, kappa = cls.n, cls.kappa
    d = n - 2
    inner = d * 4.0**d / sphere_volume(d) * kappa ** (n - 1) * x + 2.0 ** (d / 2)
    z = inner ** (1.0 / (kappa * d))
    if not z > 1:
        raise DomainError(
            f"closed-form width bound undefined at x={x!r} (z={z!r} <= 1)"
        )
    return 0.5 * math.log1p(2.0 / (z - 1.0))


def _cosh_power_integral(power: int, kappa: float, upper: float, quad: QuadratureSpec) -> float:
    value, _ = adaptive_quad(lambda t: np.cosh(kappa * t) ** power, 0.0, upper, quad)
    return value


def tube_volume_bounds(
    cls: PinchedClass,
    A: float,
    quad: QuadratureSpec = DEFAULT_QUAD,
    root: RootFindSpec = DEFAULT_ROOT,
) -> TubeVolumeBounds:
    """Lower and upper estimates for the volume of the width-tube around a
    totally geodesic hypersurface of volume ``A``.

    ``lower = 2A int_0^{w_{n,kappa}(A)} cosh^{n-1}(kappa t) dt`` and
    ``upper`` is the same expression for ``kappa = 1``, whose width is larger.
    """
    A = _check_area(A)
    p = cls.n - 1
    w_kappa = width(cls, A, quad, root).width
    lower = 2 * A * _cosh_power_integral(p, cls.kappa, w_kappa, quad)
    if cls.kappa == 1.0:
        upper = lower
    else:
        w_one = width(PinchedClass(cls.n, 1.0), A, quad, root).width
        upper = 2 * A * _cosh_power_integral(p, 1.0, w_one, quad)
    return TubeVolumeBounds(lower=lower, upper=upper)


def tube_volume_lower_lemma(
    cls: PinchedClass,
    A: float,
    quad: QuadratureSpec = DEFAULT_QUAD,
    root: RootFindSpec = DEFAULT_ROOT,
) -> float:
    """``A (exp((n-1) kappa w) - 1) / (kappa (n-1) 2^(n-2))`` with ``w`` the
    width at ``A``; never exceeds ``tube_volume_bounds(...).lower``."""
    A = _check_area(A)
    n, kappa = cls.n, cls.kappa
    w = width(cls, A, quad, root).width
    return A * math.expm1((n - 1) * kappa * w) / (kappa * (n - 1) * 2.0 ** (n - 2))


def ideal_triangle_leg(phi: float) -> float:
    """Finite side ``r`` of the right-angled hyperbolic triangle with one ideal
    vertex and angle ``phi`` at the finite vertex: ``sinh(r) = cot(phi)``."""
    if not (0.0 < phi < math.pi / 2):
        raise DomainError(f"phi must lie in (0, pi/2), got {phi!r}")
    return math.asinh(1.0 / math.tan(phi))


def disjointness_gap(
    cls: PinchedClass,
    A1: float,
    A2: float,
    quad: QuadratureSpec = DEFAULT_QUAD,
    root: RootFindSpec = DEFAULT_ROOT,
) -> float:
    """Certified minimal distance between disjoint closed totally geodesic
    hypersurfaces of volumes ``A1`` and ``A2``."""
    return width(cls, A1, quad, root).width + width(cls, A2, quad, root).width
