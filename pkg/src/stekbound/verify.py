"""Invariant suites behind ``stekbound verify``.

Each check returns ``(passed, detail)``.  Checks are independent of the test
suite so an installed build can certify itself.
"""

from __future__ import annotations

import math
import random
import time
from typing import Callable, Iterable

import numpy as np

from . import bounds, hypgeom, sturm, tube
from .hypgeom import PinchedClass

Check = Callable[[], tuple[bool, str]]

SUITES: dict[str, list[tuple[str, Check]]] = {"hypgeom": [], "tube": [], "sturm": [], "bounds": []}


def check(suite: str):
    def register(fn: Check) -> Check:
        SUITES[suite].append((fn.__name__, fn))
        return fn

    return register


def _worst(values: Iterable[float]) -> float:
    return max(values, default=0.0)


# ---------------------------------------------------------------------------
# hypgeom


@check("hypgeom")
def sinh_identity() -> tuple[bool, str]:
    worst = _worst(
        abs(math.sinh(a) * math.sinh(hypgeom.dist_function_r(a)) - 1.0)
        for a in np.logspace(-3, 1.5, 80)
    )
    return worst <= 1e-12, f"max |sinh a sinh r(a) - 1| = {worst:.2e}"


@check("hypgeom")
def ball_volume_monotone() -> tuple[bool, str]:
    radii = np.linspace(0.05, 6.0, 25)
    kappas = (0.25, 0.5, 0.75, 1.0)
    ok = True
    for m in (2, 3, 5):
        grid = [[hypgeom.hyperbolic_ball_volume(m, k, float(r)) for r in radii] for k in kappas]
        ok &= all(b > a for row in grid for a, b in zip(row, row[1:]))
        ok &= all(grid[i + 1][j] > grid[i][j] for i in range(len(kappas) - 1) for j in range(len(radii)))
    return ok, "strictly increasing in r and kappa on a 3 x 4 x 25 grid"


@check("hypgeom")
def small_radius_limit() -> tuple[bool, str]:
    worst = 0.0
    for m in (2, 3, 4, 6):
        for k in (0.25, 1.0):
            ratio = hypgeom.hyperbolic_ball_volume(m, k, 1e-3) / (
                hypgeom.euclidean_ball_volume(m) * 1e-3**m
            )
            worst = max(worst, abs(ratio - 1.0))
    return worst <= 0.01, f"max |V/(omega r^m) - 1| at r = 1e-3: {worst:.2e}"


@check("hypgeom")
def gunther_comparison() -> tuple[bool, str]:
    ok = all(
        hypgeom.hyperbolic_ball_volume(m, k, r) >= hypgeom.euclidean_ball_volume(m) * r**m
        for m in (2, 3, 4, 6)
        for k in (0.25, 0.5, 1.0)
        for r in (0.01, 0.3, 1.0, 4.0)
    )
    return ok, "V_{m,kappa}(r) >= omega_m r^m on 48 samples"


@check("hypgeom")
def invert_round_trip() -> tuple[bool, str]:
    rng = random.Random(1234)
    worst = 0.0
    for _ in range(40):
        a, b, c = rng.uniform(0.1, 3), rng.uniform(0.1, 2), rng.uniform(-5, 5)

        def f(x, a=a, b=b, c=c):
            return a * x + b * math.sinh(x) + c

        y = rng.uniform(-50, 50)
        x = hypgeom.monotone_invert(f, y)
        worst = max(worst, abs(f(x) - y) / max(1.0, abs(y)))
    return worst <= 1e-9, f"max relative residual {worst:.2e} over 40 random functions"


# ---------------------------------------------------------------------------
# tube


_CLASSES = [PinchedClass(n, k) for n in (3, 4, 5, 7) for k in (0.25, 0.5, 1.0)]


@check("tube")
def width_round_trip() -> tuple[bool, str]:
    worst = 0.0
    for cls in _CLASSES:
        for A in np.logspace(-2, 8, 12):
            w = tube.width(cls, float(A)).width
            back = hypgeom.hyperbolic_ball_volume(cls.n - 1, cls.kappa, hypgeom.dist_function_r(2 * w))
            worst = max(worst, abs(back - A) / A)
    return worst <= 1e-9, f"max relative round-trip error {worst:.2e}"


@check("tube")
def width_monotone() -> tuple[bool, str]:
    areas = np.logspace(-2, 8, 15)
    ok = True
    for n in (3, 4, 5, 7):
        rows = [[tube.width(PinchedClass(n, k), float(A)).width for A in areas] for k in (0.25, 0.5, 1.0)]
        ok &= all(b < a for row in rows for a, b in zip(row, row[1:]))
        ok &= all(rows[i + 1][j] > rows[i][j] for i in range(2) for j in range(len(areas)))
    return ok, "decreasing in A, increasing in kappa"


@check("tube")
def closed_form_below_width() -> tuple[bool, str]:
    worst = -math.inf
    for cls in _CLASSES:
        for A in np.logspace(0, 6, 20):
            w = tube.width(cls, float(A)).width
            worst = max(worst, tube.width_closed_form_lower(cls, float(A)) / w)
    return worst <= 1.0, f"max closed-form / width = {worst:.4f}"


@check("tube")
def tube_volume_chain() -> tuple[bool, str]:
    ok = True
    for cls in _CLASSES:
        for A in (0.1, 10.0, 1e4):
            tb = tube.tube_volume_bounds(cls, A)
            lemma = tube.tube_volume_lower_lemma(cls, A)
            w = tube.width(cls, A).width
            ok &= 0 < tb.lower <= tb.upper
            ok &= A * w / 2 ** (cls.n - 2) <= lemma <= tb.lower
    return ok, "A w / 2^(n-2) <= explicit intermediate <= lower <= upper"


@check("tube")
def tube_lower_divergence() -> tuple[bool, str]:
    ok = True
    for cls in _CLASSES:
        if cls.kappa * (cls.n - 2) > 1:
            ok &= tube.tube_volume_lower_lemma(cls, 1e6) > 10 * tube.tube_volume_lower_lemma(cls, 1.0)
    return ok, "explicit tube-volume lower bound grows when kappa (n-2) > 1"


@check("tube")
def ideal_triangle_composition() -> tuple[bool, str]:
    worst = _worst(
        abs(math.sinh(tube.ideal_triangle_leg(p)) * math.sinh(tube.ideal_triangle_leg(math.pi / 2 - p)) - 1)
        for p in np.linspace(0.01, math.pi / 2 - 0.01, 50)
    )
    return worst <= 1e-12, f"max |sinh(leg phi) sinh(leg(pi/2 - phi)) - 1| = {worst:.2e}"


# ---------------------------------------------------------------------------
# sturm


@check("sturm")
def stekdir_floor_holds() -> tuple[bool, str]:
    worst = math.inf
    for n in (3, 4, 5, 6):
        for k in (0.25, 0.5, 1.0):
            floor = k * (n - 1) / 2 ** (n - 1)
            for delta in (0.5, 1.0, 2.0, 5.0, 40.0):
                sigma = sturm.shell_steklov_dirichlet(sturm.ShellProblem(PinchedClass(n, k), delta)).sigma1_D
                worst = min(worst, sigma / floor)
    return worst >= 1.0, f"min sigma_1^D / floor = {worst:.4f}"


@check("sturm")
def shell_monotone() -> tuple[bool, str]:
    ok = True
    cls = PinchedClass(4, 0.5)
    prev = math.inf
    for delta in (0.5, 1.0, 2.0, 5.0):
        res = sturm.shell_steklov_dirichlet(sturm.ShellProblem(cls, delta, (0.0, 0.5, 2.0, 6.0)))
        ok &= all(b > a for a, b in zip(res.values, res.values[1:]))
        ok &= res.values[0] < prev
        prev = res.values[0]
    return ok, "sigma increasing in mu, decreasing in delta"


@check("sturm")
def shell_closed_form_and_order() -> tuple[bool, str]:
    cls = PinchedClass(4, 0.5)
    exact = 1.0 / hypgeom.adaptive_quad(lambda t: np.cosh(0.5 * t) ** -3, 0.0, 2.0)[0]
    errs = [
        abs(sturm.shell_steklov_dirichlet(sturm.ShellProblem(cls, 2.0, grid_points=g)).values[0] - exact)
        for g in (128, 256, 512)
    ]
    orders = [math.log2(errs[0] / errs[1]), math.log2(errs[1] / errs[2])]
    fine = sturm.shell_steklov_dirichlet(sturm.ShellProblem(cls, 2.0)).values[0]
    rel = abs(fine - exact) / exact
    ok = all(1.8 <= p <= 2.2 for p in orders) and rel <= 1e-6
    return ok, f"observed orders {orders[0]:.3f}, {orders[1]:.3f}; fine-grid rel error {rel:.1e}"


@check("sturm")
def ball_domain_monotone() -> tuple[bool, str]:
    radii = (0.5, 1.0, 2.0, 5.0)
    ok = True
    for m, k in ((2, 1.0), (3, 0.5)):
        vals = [
            sturm.dirichlet_ball_spectrum(sturm.RadialDirichletProblem(m, k, R, 0, 512), 1).values[0]
            for R in radii
        ]
        ok &= all(b < a for a, b in zip(vals, vals[1:]))
        ok &= all(v > (m - 1) ** 2 * k * k / 4 for v in vals)
    return ok, "lambda_1 decreasing in R and above (m-1)^2 kappa^2 / 4"


@check("sturm")
def ball_euclidean_regime() -> tuple[bool, str]:
    j01 = 2.404825557695773
    lam = sturm.dirichlet_ball_spectrum(sturm.RadialDirichletProblem(2, 1.0, 0.1), 1).values[0]
    rel = abs(lam / (j01 / 0.1) ** 2 - 1)
    return rel <= 0.015, f"lambda_1(B(0.1)) = {lam:.4f}, {rel:.2%} from the Euclidean value"


# ---------------------------------------------------------------------------
# bounds


@check("bounds")
def cgh_consistency() -> tuple[bool, str]:
    rng = random.Random(99)
    ok = True
    for _ in range(50):
        cls = PinchedClass(rng.choice((3, 4, 5)), rng.choice((0.25, 0.5, 1.0)))
        A, lam = 10 ** rng.uniform(-1, 5), 10 ** rng.uniform(-3, 3)
        low, up = bounds.cgh_lower(cls, A, lam), bounds.cgh_upper(cls, A, lam)
        ok &= low.value <= up.value and low.extras["simple_form"] <= low.value
    return ok, "lower <= upper and quadratic form >= simple form on 50 samples"


@check("bounds")
def evaluator_monotone() -> tuple[bool, str]:
    provider = bounds.ConstantProvider()
    cls = PinchedClass(4, 0.5)
    vals = [bounds.sigma_b_lower_thm12(cls, A, provider).value for A in (1.0, 10.0, 100.0, 1e3)]
    ok = all(b < a for a, b in zip(vals, vals[1:]))

    def thm13(b=2, A=5.0, V=50.0, V1=20.0):
        d = bounds.ManifoldDescriptor(cls, (A,) * b, V, V1)
        return bounds.sigma1_lower_thm13(d, provider).value

    base = thm13()
    ok &= thm13(b=3) < base and thm13(A=6.0) < base and thm13(V=60.0) < base and thm13(V1=30.0) < base
    return ok, "sigma_b bound decreasing in A; sigma_1 bound decreasing in b, A, V, V1"


@check("bounds")
def floor_matches_shell() -> tuple[bool, str]:
    worst = 0.0
    for n in (3, 4, 5):
        for k in (0.5, 1.0):
            cls = PinchedClass(n, k)
            sharp = bounds.stekdir_floor(cls).extras["sharper"]
            shell = sturm.shell_steklov_dirichlet(sturm.ShellProblem(cls, 40.0)).sigma1_D
            worst = max(worst, abs(sharp - shell))
    return worst <= 1e-5, f"max |sharper floor - shell(delta = 40)| = {worst:.1e}"


@check("bounds")
def gluing_decay() -> tuple[bool, str]:
    d = bounds.ManifoldDescriptor(PinchedClass(3, 1.0), (4.0, 6.0), 30.0)
    ratios = [
        bounds.example51_upper(d, j).value / bounds.example51_upper(d, 2 * j).value for j in (64, 128)
    ]
    return all(1.9 <= r <= 2.1 for r in ratios), f"bound(j)/bound(2j) = {ratios}"


@check("bounds")
def schoen_scaling() -> tuple[bool, str]:
    provider = bounds.ConstantProvider()
    worst = 0.0
    # the exponent is only reached once the width is small, which for
    # kappa (n-2) near 1 takes A well beyond 1e3
    for cls in (PinchedClass(4, 1.0), PinchedClass(4, 0.5), PinchedClass(5, 0.5), PinchedClass(6, 1.0)):
        expected = 2 + 1 / (cls.kappa * (cls.n - 2))
        for A in (1e6, 1e7):
            ratio = bounds.sigma_b_lower_thm12(cls, A, provider).value / bounds.sigma_b_lower_thm12(
                cls, 2 * A, provider
            ).value
            worst = max(worst, abs(math.log2(ratio) / expected - 1))
    return worst <= 0.02, f"max relative exponent deviation {worst:.2%}"


def run(suite: str = "all", out=print) -> bool:
    names = list(SUITES) if suite == "all" else [suite]
    passed = True
    for name in names:
        for check_name, fn in SUITES[name]:
            start = time.perf_counter()
            try:
                ok, detail = fn()
            except Exception as exc:  # a crash is a failure, not an abort
                ok, detail = False, f"raised {type(exc).__name__}: {exc}"
            elapsed = time.perf_counter() - start
            out(f"{'PASS' if ok else 'FAIL'} {name}.{check_name} ({elapsed:.2f}s): {detail}")
            passed &= ok
    return passed
