"""Finite-difference solvers for the two separable model problems.

* Dirichlet eigenvalues of geodesic balls in the space form of curvature
  ``-kappa**2``, one spherical-harmonic block at a time, merged into the full
  ordered spectrum.
* Steklov-Dirichlet values of the warped collar ``dt^2 + cosh^2(kappa t) g``
  of depth ``delta`` over a cross-section with Laplace eigenvalue ``mu``.

Both are assembled in symmetric (Liouville) form on uniform grids; the ball
problem becomes a symmetric tridiagonal eigenproblem solved by Sturm-sequence
bisection, the collar problem a Schur-complement recursion.  Every result
carries a Richardson error estimate from a second grid of half the size.
"""

from __future__ import annotations

import functools
import math
import os
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ResolutionError
from .hypgeom import PinchedClass

__all__ = [
    "RadialDirichletProblem",
    "ShellProblem",
    "Spectrum",
    "ShellSpectrum",
    "harmonic_multiplicity",
    "tridiagonal_eigenvalues",
    "dirichlet_ball_spectrum",
    "dirichlet_ball_full_spectrum",
    "shell_steklov_dirichlet",
    "shell_delta_cap",
    "steklov_upper_bound_thm52",
    "large_radius_scan",
    "FAULT_ENV",
]

DEFAULT_GRID = 2048
DEDUP_RTOL = 1e-8
# relative Richardson estimate above which an eigenvalue is flagged
UNCONVERGED_RTOL = 1e-3
DELTA_CAP = 40.0  # in units of 1/kappa

# Test-only switch: "shell-sign" flips the sign of the warping exponent in the
# collar problem so the verification harness can be shown to catch it.
FAULT_ENV = "STEKBOUND_FAULT"


@dataclass(frozen=True)
class RadialDirichletProblem:
    m: int
    kappa: float
    radius: float
    l: int = 0
    grid_points: int = DEFAULT_GRID

    def __post_init__(self):
        if int(self.m) != self.m or self.m < 2:
            raise DomainError(f"m must be an integer >= 2, got {self.m!r}")
        if not (0.0 < self.kappa <= 1.0):
            raise DomainError(f"kappa must lie in (0, 1], got {self.kappa!r}")
        if not (math.isfinite(self.radius) and self.radius > 0):
            raise DomainError(f"radius must be positive and finite, got {self.radius!r}")
        if int(self.l) != self.l or self.l < 0:
            raise DomainError(f"angular index must be a non-negative integer, got {self.l!r}")
        if self.grid_points < 16:
            raise DomainError(f"grid_points must be >= 16, got {self.grid_points!r}")


@dataclass(frozen=True)
class ShellProblem:
    cls: PinchedClass
    delta: float
    cross_section_eigenvalues: tuple[float, ...] = (0.0,)
    grid_points: int = DEFAULT_GRID

    def __post_init__(self):
        if not self.delta > 0:
            raise DomainError(f"delta must be positive, got {self.delta!r}")
        mus = tuple(float(mu) for mu in self.cross_section_eigenvalues)
        if not mus or mus[0] != 0.0:
            raise DomainError("cross_section_eigenvalues must start with mu_0 = 0")
        if any(b < a for a, b in zip(mus, mus[1:])) or any(mu < 0 for mu in mus):
            raise DomainError("cross_section_eigenvalues must be non-negative and ascending")
        if self.grid_points < 16:
            raise DomainError(f"grid_points must be >= 16, got {self.grid_points!r}")
        object.__setattr__(self, "cross_section_eigenvalues", mus)


@dataclass(frozen=True)
class Spectrum:
    """Ascending distinct eigenvalues with multiplicities.

    ``labels`` records where each value came from (the angular index for the
    ball, the cross-section eigenvalue for the collar); ``flags`` lists
    warnings per value, e.g. ``"richardson-unconverged"``.
    """

    values: tuple[float, ...]
    error_estimates: tuple[float, ...]
    multiplicities: tuple[int, ...] = ()
    labels: tuple = ()
    flags: tuple[tuple[str, ...], ...] = ()

    def __post_init__(self):
        k = len(self.values)
        if not self.multiplicities:
            object.__setattr__(self, "multiplicities", (1,) * k)
        if not self.labels:
            object.__setattr__(self, "labels", (None,) * k)
        if not self.flags:
            object.__setattr__(self, "flags", ((),) * k)

    def nth(self, k: int) -> float:
        """The ``k``-th eigenvalue (1-based) counted with multiplicity."""
        return self.values[self._index(k)]

    def nth_error(self, k: int) -> float:
        return self.error_estimates[self._index(k)]

    def _index(self, k: int) -> int:
        if k < 1:
            raise DomainError(f"eigenvalue index must be >= 1, got {k}")
        seen = 0
        for i, mult in enumerate(self.multiplicities):
            seen += mult
            if seen >= k:
                return i
        raise ResolutionError(f"spectrum holds only {seen} eigenvalues, asked for #{k}")

    def expanded(self) -> list[float]:
        out = []
        for value, mult in zip(self.values, self.multiplicities):
            out.extend([value] * mult)
        return out


@dataclass(frozen=True)
class ShellSpectrum(Spectrum):
    mu: tuple[float, ...] = ()
    sigma1_D: float = math.nan
    delta: float = math.nan
    truncated: bool = False
    truncation_bound: float = 0.0


def harmonic_multiplicity(m: int, l: int) -> int:
    """Dimension of the degree-``l`` spherical harmonics on ``S^{m-1}``."""
    if m == 2:
        return 1 if l == 0 else 2
    return (2 * l + m - 2) * math.factorial(l + m - 3) // (math.factorial(l) * math.factorial(m - 2))


# ---------------------------------------------------------------------------
# Symmetric tridiagonal eigenvalues by bisection


def _sturm_count(diag: list[float], off_sq: list[float], x: float, pivmin: float) -> int:
    """Number of eigenvalues below ``x`` (negative pivots of ``T - x I``)."""
    count = 0
    q = diag[0] - x
    if abs(q) < pivmin:
        q = -pivmin
    if q < 0:
        count += 1
    for i in range(1, len(diag)):
        q = diag[i] - x - off_sq[i - 1] / q
        if abs(q) < pivmin:
            q = -pivmin
        if q < 0:
            count += 1
    return count


def tridiagonal_eigenvalues(diag, off, k: int) -> np.ndarray:
    """Lowest ``k`` eigenvalues of the symmetric tridiagonal matrix with
    diagonal ``diag`` and off-diagonal ``off``, by bisection on Sturm counts."""
    diag = [float(x) for x in diag]
    off = [float(x) for x in off]
    size = len(diag)
    if not 1 <= k <= size:
        raise DomainError(f"cannot extract {k} eigenvalues from a {size}x{size} matrix")
    off_sq = [e * e for e in off]
    radius = [abs(off[i - 1]) if i > 0 else 0.0 for i in range(size)]
    for i in range(size - 1):
        radius[i] += abs(off[i])
    lower = min(d - r for d, r in zip(diag, radius))
    upper = max(d + r for d, r in zip(diag, radius))
    scale = max(abs(lower), abs(upper), 1e-300)
    pivmin = max(1e-300, 2.2e-308 * max(off_sq, default=1.0))
    eps = 2.0 ** -52

    out = np.empty(k)
    lo_known = [lower] * k
    hi_known = [upper] * k
    for j in range(k):
        lo, hi = max(lo_known[j], out[j - 1] if j else lower), hi_known[j]
        while hi - lo > 2 * eps * max(abs(lo), abs(hi)) + 4 * eps * eps * scale:
            mid = 0.5 * (lo + hi)
            if mid == lo or mid == hi:
                break
            c = _sturm_count(diag, off_sq, mid, pivmin)
            # c eigenvalues lie below mid: tighten every affected interval
            if c > j:
                hi = mid
                for i in range(j + 1, min(c, k)):
                    hi_known[i] = min(hi_known[i], mid)
                for i in range(c, k):
                    lo_known[i] = max(lo_known[i], mid)
            else:
                lo = mid
                for i in range(j + 1, k):
                    if c <= i:
                        lo_known[i] = max(lo_known[i], mid)
        out[j] = 0.5 * (lo + hi)
    return out


# ---------------------------------------------------------------------------
# Dirichlet problem on geodesic balls


def _ball_block(m: int, kappa: float, radius: float, l: int, n: int, k: int) -> np.ndarray:
    # Cell-centred grid r_i = (i - 1/2) h, i = 1..n, with u(radius) = 0 at
    # r_{n+1/2}.  The weight p(r) = (sinh(kappa r)/kappa)^(m-1) vanishes at 0,
    # so the flux through r = 0 drops out for either parity of the ghost value.
    h = radius / (n + 0.5)
    r = (np.arange(1, n + 1) - 0.5) * h
    p_centre = (np.sinh(kappa * r) / kappa) ** (m - 1)
    p_left = (np.sinh(kappa * (r - 0.5 * h)) / kappa) ** (m - 1)
    p_right = (np.sinh(kappa * (r + 0.5 * h)) / kappa) ** (m - 1)
    ghost = 1.0 if l == 0 else -1.0  # mirror: even for l = 0, odd for l >= 1
    p_left[0] = p_left[0] * (1.0 - ghost)
    potential = l * (l + m - 2) * kappa**2 / np.sinh(kappa * r) ** 2
    stiff_diag = (p_left + p_right) / h**2 + potential * p_centre
    stiff_off = -p_right[:-1] / h**2
    inv_sqrt_w = 1.0 / np.sqrt(p_centre)
    diag = stiff_diag * inv_sqrt_w**2
    off = stiff_off * inv_sqrt_w[:-1] * inv_sqrt_w[1:]
    return tridiagonal_eigenvalues(diag, off, k)


def _richardson(fine: np.ndarray, coarse: np.ndarray, order: int = 2):
    estimates = np.abs(fine - coarse) / (2**order - 1)
    flags = tuple(
        ("richardson-unconverged",) if est > UNCONVERGED_RTOL * abs(val) else ()
        for val, est in zip(fine, estimates)
    )
    return estimates, flags


@functools.lru_cache(maxsize=512)
def _ball_block_pair(m, kappa, radius, l, grid_points, k):
    fine = _ball_block(m, kappa, radius, l, grid_points, k)
    coarse = _ball_block(m, kappa, radius, l, grid_points // 2, k)
    return fine, coarse


def dirichlet_ball_spectrum(p: RadialDirichletProblem, k_max: int) -> Spectrum:
    """Lowest ``k_max`` eigenvalues of the radial operator

        -u'' - (m-1) kappa coth(kappa r) u' + l(l+m-2) kappa^2 / sinh^2(kappa r) u

    on ``(0, radius)`` with ``u(radius) = 0``, i.e. one angular block of the
    Dirichlet Laplacian on a geodesic ball.  Each value carries the
    multiplicity of the degree-``l`` harmonics.
    """
    if k_max < 1:
        raise DomainError(f"k_max must be >= 1, got {k_max!r}")
    if k_max > p.grid_points // 8:
        raise ResolutionError(
            f"{p.grid_points} grid points cannot resolve {k_max} eigenvalues; "
            f"use at least {8 * k_max}"
        )
    fine, coarse = _ball_block_pair(
        int(p.m), float(p.kappa), float(p.radius), int(p.l), int(p.grid_points), int(k_max)
    )
    if np.any(np.diff(fine) <= DEDUP_RTOL * np.abs(fine[1:])):
        raise ResolutionError("eigenvalues not separated on this grid")
    estimates, flags = _richardson(fine, coarse)
    mult = harmonic_multiplicity(int(p.m), int(p.l))
    return Spectrum(
        values=tuple(float(v) for v in fine),
        error_estimates=tuple(float(e) for e in estimates),
        multiplicities=(mult,) * k_max,
        labels=(int(p.l),) * k_max,
        flags=flags,
    )


def dirichlet_ball_full_spectrum(
    m: int,
    kappa: float,
    radius: float,
    k_max: int,
    l_max: int | None = None,
    grid_points: int = DEFAULT_GRID,
) -> Spectrum:
    """The ordered Dirichlet spectrum of the ball, up to at least ``k_max``
    eigenvalues counted with multiplicity, merged over ``l = 0..l_max``.

    With ``l_max=None`` angular blocks are added until the lowest eigenvalue
    of the next block exceeds the ``k_max``-th merged value.  An explicit
    ``l_max`` that is too small raises :class:`ResolutionError` naming the
    required value.
    """
    if k_max < 1:
        raise DomainError(f"k_max must be >= 1, got {k_max!r}")
    if l_max is not None and l_max < 0:
        raise DomainError(f"l_max must be >= 0, got {l_max!r}")

    blocks: list[Spectrum] = []

    def block(l: int) -> Spectrum:
        while len(blocks) <= l:
            l_next = len(blocks)
            # a block of multiplicity d contributes at most ceil(k_max/d) values
            count = -(-k_max // harmonic_multiplicity(m, l_next))
            blocks.append(
                dirichlet_ball_spectrum(
                    RadialDirichletProblem(m, kappa, radius, l_next, grid_points), count
                )
            )
        return blocks[l]

    def merged(upto: int):
        entries = []
        for l in range(upto + 1):
            b = block(l)
            entries.extend(zip(b.values, b.error_estimates, b.multiplicities, b.labels, b.flags))
        entries.sort(key=lambda item: (item[0], item[3]))
        values, errs, mults, labels, flags = [], [], [], [], []
        for value, err, mult, label, flag in entries:
            if values and abs(value - values[-1]) <= DEDUP_RTOL * abs(value):
                mults[-1] += mult
                errs[-1] = max(errs[-1], err)
                labels[-1] = labels[-1] + (label,)
                flags[-1] = tuple(sorted(set(flags[-1]) | set(flag)))
                continue
            values.append(value)
            errs.append(err)
            mults.append(mult)
            labels.append((label,))
            flags.append(flag)
        total, cut = 0, len(values)
        for i, mult in enumerate(mults):
            total += mult
            if total >= k_max:
                cut = i + 1
                break
        return Spectrum(
            values=tuple(values[:cut]),
            error_estimates=tuple(errs[:cut]),
            multiplicities=tuple(mults[:cut]),
            labels=tuple(labels[:cut]),
            flags=tuple(flags[:cut]),
        )

    def sufficient(upto: int, spec: Spectrum) -> bool:
        return sum(spec.multiplicities) >= k_max and block(upto).values[0] > spec.values[-1]

    if l_max is not None:
        spec = merged(l_max)
        if sufficient(l_max, spec):
            return spec
        need = l_max + 1
        while not sufficient(need, merged(need)):
            need += 1
        raise ResolutionError(
            f"l_max={l_max} is too small for k_max={k_max}; use l_max >= {need}"
        )
    upto = 0
    spec = merged(0)
    while not sufficient(upto, spec):
        upto += 1
        spec = merged(upto)
    return spec


def large_radius_scan(m: int, kappa: float, radii=(5.0, 10.0, 20.0), grid_points: int = DEFAULT_GRID) -> dict:
    """First Dirichlet eigenvalue of balls of growing radius, next to the
    bottom of the spectrum ``(m-1)^2 kappa^2 / 4`` of the space form."""
    values = [
        dirichlet_ball_spectrum(RadialDirichletProblem(m, kappa, float(R), 0, grid_points), 1).values[0]
        for R in radii
    ]
    return {
        "radii": [float(R) for R in radii],
        "lambda_1": values,
        "monotone_decreasing": all(b < a for a, b in zip(values, values[1:])),
        "bottom_of_spectrum": (m - 1) ** 2 * kappa**2 / 4,
    }


# ---------------------------------------------------------------------------
# Steklov-Dirichlet problem on the warped collar


def shell_delta_cap(kappa: float) -> float:
    return DELTA_CAP / kappa


def _shell_sigma(n: int, kappa: float, delta: float, mu: float, grid: int) -> float:
    # Minimise the discrete energy
    #   sum P_{i+1/2} (T_{i+1} - T_i)^2 / h + mu sum c_i W_i T_i^2 h
    # over T with T_0 = 1, T_grid = 0 (c_0 = 1/2, trapezoid weights), where
    # P = cosh^{n-1}(kappa t), W = cosh^{n-3}(kappa t).  The minimum is the
    # Schur complement onto node 0, built by eliminating from the far end.
    exponent = n - 1
    if os.environ.get(FAULT_ENV) == "shell-sign":
        exponent = -exponent
    h = delta / grid
    t_half = (np.arange(grid) + 0.5) * h
    flux = (np.cosh(kappa * t_half) ** exponent / h).tolist()
    if mu:
        mass = (mu * h * np.cosh(kappa * np.arange(grid) * h) ** (n - 3)).tolist()
        mass[0] *= 0.5
    else:
        mass = [0.0] * grid
    schur = flux[grid - 1] + flux[grid - 2] + mass[grid - 1]
    for i in range(grid - 2, 0, -1):
        schur = flux[i] + flux[i - 1] + mass[i] - flux[i] * flux[i] / schur
    return flux[0] + mass[0] - flux[0] * flux[0] / schur


def shell_steklov_dirichlet(p: ShellProblem) -> ShellSpectrum:
    """Steklov-Dirichlet values ``sigma(mu)`` of the collar of depth ``delta``.

    For each cross-section eigenvalue ``mu`` solves
    ``(cosh^{n-1}(kappa t) T')' = mu cosh^{n-3}(kappa t) T`` on ``(0, delta)``
    with ``T(delta) = 0`` and returns ``sigma = -T'(0)/T(0)``.  Depths beyond
    ``40/kappa`` (including ``inf``) are capped there and flagged.
    """
    n, kappa = p.cls.n, p.cls.kappa
    cap = shell_delta_cap(kappa)
    truncated = p.delta > cap
    delta = cap if truncated else float(p.delta)
    grid = p.grid_points
    h = delta / grid
    mus = p.cross_section_eigenvalues
    for mu in mus:
        if math.sqrt(mu) * h > 0.5:
            raise ResolutionError(
                f"grid spacing {h:.3g} cannot resolve the boundary layer for mu={mu}; "
                f"use more than {int(2 * math.sqrt(mu) * delta) + 1} grid points"
            )
    # distinct mu only; repeated cross-section eigenvalues raise multiplicity
    distinct: list[float] = []
    mults: list[int] = []
    for mu in mus:
        if distinct and abs(mu - distinct[-1]) <= DEDUP_RTOL * max(abs(mu), 1.0):
            mults[-1] += 1
        else:
            distinct.append(mu)
            mults.append(1)
    fine = np.array([_shell_sigma(n, kappa, delta, mu, grid) for mu in distinct])
    coarse = np.array([_shell_sigma(n, kappa, delta, mu, grid // 2) for mu in distinct])
    estimates, flags = _richardson(fine, coarse)
    if truncated:
        flags = tuple(f + ("depth-truncated",) for f in flags)
    # tail of int cosh^{-(n-1)}(kappa t) dt beyond the cap, relative to the whole
    tail = 2.0 ** (n - 1) * math.exp(-(n - 1) * kappa * cap) / ((n - 1) * kappa)
    return ShellSpectrum(
        values=tuple(float(v) for v in fine),
        error_estimates=tuple(float(e) for e in estimates),
        multiplicities=tuple(mults),
        labels=tuple(distinct),
        flags=flags,
        mu=tuple(distinct),
        sigma1_D=float(fine.min()),
        delta=delta,
        truncated=truncated,
        truncation_bound=tail if truncated else 0.0,
    )


def steklov_upper_bound_thm52(
    n: int, k: int, epsilon: float, grid_points: int = DEFAULT_GRID
) -> float:
    """Upper bound ``cosh(1)/2 * lambda_{k+1}(B(1)) * epsilon`` for the
    ``k``-th Steklov eigenvalue of a hyperbolic ``n``-manifold whose two
    boundary components are joined by an orthogonal arc of length
    ``epsilon``; ``B(1)`` is the unit ball of hyperbolic ``(n-1)``-space."""
    if int(n) != n or n < 3:
        raise DomainError(f"n must be an integer >= 3, got {n!r}")
    if int(k) != k or k < 1:
        raise DomainError(f"k must be an integer >= 1, got {k!r}")
    if not (math.isfinite(epsilon) and epsilon > 0):
        raise DomainError(f"epsilon must be positive, got {epsilon!r}")
    lam = dirichlet_ball_full_spectrum(n - 1, 1.0, 1.0, k + 1, grid_points=grid_points).nth(k + 1)
    return 0.5 * math.cosh(1.0) * lam * epsilon
