"""Hyperbolic special functions, sphere constants, quadrature and root finding.

Everything here is a pure function of its arguments.  The two numerical
primitives, :func:`adaptive_quad` and :func:`monotone_invert`, are written for
the smooth, exponentially growing, strictly monotone functions that appear in
the tube and ball volume formulas.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import BracketError, ConvergenceError, DomainError, RangeError

__all__ = [
    "PinchedClass",
    "QuadratureSpec",
    "RootFindSpec",
    "DEFAULT_QUAD",
    "DEFAULT_ROOT",
    "adaptive_quad",
    "sphere_volume",
    "euclidean_ball_volume",
    "hyperbolic_ball_volume",
    "dist_function_r",
    "monotone_invert",
]


@dataclass(frozen=True)
class PinchedClass:
    """Dimension ``n`` and pinching ``kappa`` of a manifold whose sectional
    curvatures lie in ``[-1, -kappa**2]``."""

    n: int
    kappa: float

    def __post_init__(self):
        if isinstance(self.n, bool) or int(self.n) != self.n or self.n < 3:
            raise DomainError(f"n must be an integer >= 3, got {self.n!r}")
        if not (0.0 < self.kappa <= 1.0):
            raise DomainError(f"kappa must lie in (0, 1], got {self.kappa!r}")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "kappa", float(self.kappa))


@dataclass(frozen=True)
class QuadratureSpec:
    rel_tol: float = 1e-12
    abs_tol: float = 0.0
    max_subdivisions: int = 2000

    def __post_init__(self):
        if not self.rel_tol > 0:
            raise DomainError("rel_tol must be positive")
        if not self.abs_tol >= 0:
            raise DomainError("abs_tol must be non-negative")
        if self.max_subdivisions < 1:
            raise DomainError("max_subdivisions must be at least 1")


@dataclass(frozen=True)
class RootFindSpec:
    tol: float = 1e-12
    max_iter: int = 200
    bracket_growth: float = 2.0

    def __post_init__(self):
        if not self.tol > 0:
            raise DomainError("tol must be positive")
        if self.max_iter < 1:
            raise DomainError("max_iter must be at least 1")
        if not self.bracket_growth > 1:
            raise DomainError("bracket_growth must exceed 1")


DEFAULT_QUAD = QuadratureSpec()
DEFAULT_ROOT = RootFindSpec()


# ---------------------------------------------------------------------------
# Gauss-Kronrod (7, 15) adaptive quadrature

# Nodes on [0, 1) of the 15-point Kronrod rule; odd indices are the 7-point
# Gauss nodes.  Values as tabulated in QUADPACK (qk15).
_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

_NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])
_KRONROD_W = np.concatenate([_WGK[:-1], _WGK[::-1]])
_GAUSS_W = np.zeros(15)
_GAUSS_W[[1, 3, 5]] = _WG[:3]
_GAUSS_W[7] = _WG[3]
_GAUSS_W[[9, 11, 13]] = _WG[2::-1]


def _gk15(f, a: float, b: float) -> tuple[float, float]:
    half = 0.5 * (b - a)
    x = 0.5 * (a + b) + half * _NODES
    y = np.asarray(f(x), dtype=float)
    if y.shape != x.shape:
        y = np.broadcast_to(y, x.shape)
    kronrod = half * float(_KRONROD_W @ y)
    gauss = half * float(_GAUSS_W @ y)
    return kronrod, abs(kronrod - gauss)


def adaptive_quad(
    f: Callable[[np.ndarray], np.ndarray],
    a: float,
    b: float,
    spec: QuadratureSpec = DEFAULT_QUAD,
) -> tuple[float, float]:
    """Integrate a vectorised ``f`` over ``[a, b]``.

    Globally adaptive: the panel with the largest embedded error estimate
    (15-point Kronrod minus 7-point Gauss) is halved until the summed estimate
    drops below ``max(abs_tol, rel_tol * |integral|)``.  Returns
    ``(integral, error_estimate)``; raises :class:`ConvergenceError` when
    ``spec.max_subdivisions`` is exhausted.
    """
    if a == b:
        return 0.0, 0.0
    value, err = _gk15(f, a, b)
    heap = [(-err, a, b, value)]
    total, total_err = value, err
    subdivisions = 0
    while total_err > max(spec.abs_tol, spec.rel_tol * abs(total)):
        if not math.isfinite(total):
            raise ConvergenceError(
                f"non-finite integrand on [{a}, {b}]", estimate=total, error=math.inf
            )
        if subdivisions >= spec.max_subdivisions:
            raise ConvergenceError(
                f"quadrature on [{a}, {b}] did not reach tolerance after "
                f"{subdivisions} subdivisions",
                estimate=total,
                error=total_err,
            )
        neg_err, lo, hi, val = heapq.heappop(heap)
        mid = 0.5 * (lo + hi)
        left, left_err = _gk15(f, lo, mid)
        right, right_err = _gk15(f, mid, hi)
        heapq.heappush(heap, (-left_err, lo, mid, left))
        heapq.heappush(heap, (-right_err, mid, hi, right))
        subdivisions += 1
        # re-sum rather than update incrementally to avoid drift
        total = math.fsum(item[3] for item in heap)
        total_err = math.fsum(-item[0] for item in heap)
    return total, total_err


# ---------------------------------------------------------------------------
# Sphere and ball constants


def _check_dim(m, minimum: int, name: str = "m") -> int:
    if isinstance(m, bool) or int(m) != m or m < minimum:
        raise DomainError(f"{name} must be an integer >= {minimum}, got {m!r}")
    return int(m)


def sphere_volume(m: int) -> float:
    """Surface measure of the unit ``m``-sphere in ``R^{m+1}``."""
    m = _check_dim(m, 0)
    return 2.0 * math.pi ** ((m + 1) / 2) / math.gamma((m + 1) / 2)


def euclidean_ball_volume(m: int) -> float:
    """Volume of the unit ball in ``R^m``."""
    m = _check_dim(m, 1)
    return math.pi ** (m / 2) / math.gamma(m / 2 + 1)


def hyperbolic_ball_volume(
    m: int, kappa: float, r: float, quad: QuadratureSpec = DEFAULT_QUAD
) -> float:
    """Volume of a geodesic ball of radius ``r`` in the ``m``-dimensional
    space form of curvature ``-kappa**2``.

    Computed as ``vol(S^{m-1}) * int_0^r (sinh(kappa t)/kappa)^(m-1) dt``.
    """
    m = _check_dim(m, 1)
    if not (0.0 < kappa <= 1.0):
        raise DomainError(f"kappa must lie in (0, 1], got {kappa!r}")
    if not r >= 0:
        raise DomainError(f"radius must be non-negative, got {r!r}")
    if r == 0:
        return 0.0
    if m == 1:
        return 2.0 * r
    p = m - 1

    def density(t):
        return (np.sinh(kappa * t) / kappa) ** p

    integral, _ = adaptive_quad(density, 0.0, float(r), quad)
    return sphere_volume(m - 1) * integral


def dist_function_r(a: float) -> float:
    """``log coth(a/2)``, the radius of the embedded ball guaranteed around an
    orthogonal geodesic arc of length ``a``.

    Evaluated as ``arcsinh(1/sinh a)`` with ``1/sinh a`` written through
    ``expm1`` so that large ``a`` keeps full relative precision.  The map is
    an involution: ``dist_function_r(dist_function_r(a)) == a``.
    """
    if not a > 0:
        raise DomainError(f"arc length must be positive, got {a!r}")
    if a > 700.0:
        inv_sinh = 2.0 * math.exp(-a)
    else:
        inv_sinh = 2.0 * math.exp(-a) / -math.expm1(-2.0 * a)
    return math.asinh(inv_sinh)


# ---------------------------------------------------------------------------
# Monotone inversion


def _toward(x: float, bound: float, step: float, growth: float) -> float:
    if math.isinf(bound):
        return x + math.copysign(step, bound)
    return bound - (bound - x) / growth


def monotone_invert(
    f: Callable[[float], float],
    target: float,
    spec: RootFindSpec = DEFAULT_ROOT,
    *,
    x0: float | None = None,
    domain: tuple[float, float] = (-math.inf, math.inf),
    increasing: bool | None = None,
    full_output: bool = False,
):
    """Solve ``f(x) = target`` for a strictly monotone ``f`` on the open
    interval ``domain``.

    A bracket is grown from ``x0`` (steps multiplied by ``spec.bracket_growth``
    toward an infinite end, geometric approach toward a finite one) and then
    refined by bisection with Illinois-type secant steps.  Iterates never
    leave the current bracket.  Stops when the bracket is narrower than
    ``spec.tol * max(1, |x|)``.

    With ``full_output`` returns ``(x, iterations)``.
    """
    lo, hi = domain
    if not lo < hi:
        raise DomainError(f"empty domain {domain!r}")
    if x0 is None:
        if math.isfinite(lo) and math.isfinite(hi):
            x0 = 0.5 * (lo + hi)
        elif math.isfinite(lo):
            x0 = lo + 1.0
        elif math.isfinite(hi):
            x0 = hi - 1.0
        else:
            x0 = 0.0
    if not lo < x0 < hi:
        raise DomainError(f"starting point {x0!r} outside domain {domain!r}")

    def g(x):
        return f(x) - target

    iterations = 0
    a, ga = x0, g(x0)
    if ga == 0:
        return (a, 0) if full_output else a

    if increasing is None:
        probe = _toward(a, hi, max(1e-3, 1e-3 * abs(a)), 1.0 + 1e-3)
        gp = g(probe)
        if gp == ga:
            probe = _toward(a, lo, max(1e-3, 1e-3 * abs(a)), 1.0 + 1e-3)
            gp = g(probe)
            increasing = gp < ga
        else:
            increasing = gp > ga
    # root lies toward hi when g(a) < 0 for increasing f, and vice versa
    bound = hi if (ga < 0) == increasing else lo

    step = max(1.0, abs(a))
    b, gb = a, ga
    while True:
        if iterations >= spec.max_iter:
            raise BracketError(
                f"no sign change for target {target!r} after {iterations} "
                f"bracket expansions (last point {b!r})"
            )
        nxt = _toward(b, bound, step, spec.bracket_growth)
        iterations += 1
        if nxt == b or (math.isfinite(bound) and abs(bound - nxt) <= 4 * math.ulp(bound)):
            raise RangeError(
                f"target {target!r} lies outside the range of the function on {domain!r}"
            )
        step *= spec.bracket_growth
        gn = g(nxt)
        if math.isnan(gn):
            raise BracketError(f"function returned NaN at {nxt!r}")
        if gn == 0:
            return (nxt, iterations) if full_output else nxt
        if (gn > 0) != (gb > 0):
            a, ga, b, gb = b, gb, nxt, gn
            break
        b, gb = nxt, gn

    if a > b:
        a, ga, b, gb = b, gb, a, ga
    # wa, wb: secant weights (Illinois scaling); ga, gb stay true residuals
    wa, wb = ga, gb
    last_side = 0
    while b - a > spec.tol * max(1.0, abs(a), abs(b)):
        if iterations >= spec.max_iter:
            raise BracketError(
                f"bracket [{a!r}, {b!r}] not resolved within {spec.max_iter} iterations"
            )
        iterations += 1
        x = 0.5 * (a + b)
        if math.isfinite(wa) and math.isfinite(wb) and iterations % 4 != 0:
            secant = (a * wb - b * wa) / (wb - wa)
            if a < secant < b:
                x = secant
        if x == a or x == b:
            break
        gx = g(x)
        if gx == 0:
            return (x, iterations) if full_output else x
        if (gx > 0) == (ga > 0):
            a, ga, wa = x, gx, gx
            if last_side == -1:
                wb *= 0.5
            last_side = -1
        else:
            b, gb, wb = x, gx, gx
            if last_side == 1:
                wa *= 0.5
            last_side = 1
    x = a if abs(ga) <= abs(gb) else b
    return (x, iterations) if full_output else x
