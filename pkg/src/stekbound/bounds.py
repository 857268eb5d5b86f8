"""Steklov eigenvalue bounds evaluated on a manifold descriptor.

Bounds whose every ingredient is computable (width function, comparison
inequalities, model integrals) are tagged ``explicit``.  Bounds that need a
constant known only to exist (Schoen's eigenvalue constant, the
Schoen-Wolpert-Yau constants, Margulis constants, ...) take it from a
:class:`ConstantProvider` and are tagged ``constant-dependent``; by default
those constants are placeholders equal to 1 and every item that used one
says so.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, fields
from typing import Mapping

from .errors import DomainError, InputError, ScopeError, StekboundError
from .hypgeom import PinchedClass, euclidean_ball_volume, hyperbolic_ball_volume
from .sturm import dirichlet_ball_full_spectrum
from .tube import disjointness_gap, width, width_closed_form_lower

__all__ = [
    "Constant",
    "ConstantProvider",
    "ManifoldDescriptor",
    "BoundItem",
    "BoundReport",
    "roll_lower",
    "cgh_lower",
    "cgh_upper",
    "sigma_b_lower_thm12",
    "sigma_k_dim3_swy",
    "sigma1_lower_thm13",
    "stekdir_floor",
    "example51_upper",
    "example51_copies",
    "thm52_item",
    "assemble_report",
]

RIGOROUS = "rigorous"
PLACEHOLDER = "placeholder"
EXPLICIT = "explicit"
CONSTANT_DEPENDENT = "constant-dependent"


@dataclass(frozen=True)
class Constant:
    value: float
    rigor: str = PLACEHOLDER

    def __post_init__(self):
        if not (math.isfinite(self.value) and self.value > 0):
            raise InputError(f"constants must be positive and finite, got {self.value!r}")
        if self.rigor not in (RIGOROUS, PLACEHOLDER):
            raise InputError(f"rigor must be {RIGOROUS!r} or {PLACEHOLDER!r}, got {self.rigor!r}")


def _placeholder(value: float = 1.0) -> Constant:
    return field(default_factory=lambda: Constant(value, PLACEHOLDER))


@dataclass(frozen=True)
class ConstantProvider:
    """Values for the non-explicit constants, for one fixed ``(n, kappa)``
    (and genus, in dimension 3).

    ``schoen``: ``lambda_1(Sigma) >= schoen / vol(Sigma)^2`` for closed
    pinched ``(n-1)``-manifolds.  ``swy_lower``/``swy_upper``:
    ``swy_lower kappa^3 l_k <= lambda_k <= swy_upper l_k`` on surfaces, and
    ``swy2_lower kappa^2 <= lambda_{2g-2} <= swy2_upper``.  ``margulis_mu``,
    ``eta``: Margulis constant and the thin-part threshold, ``eta < mu/2``.
    ``zeghib``: ``vol(M) >= zeghib * vol(boundary)``.  ``c_thm12``,
    ``c_thm13``: the constants of the ``sigma_b`` and ``sigma_1`` lower
    bounds.
    """

    schoen: Constant = _placeholder()
    margulis_mu: Constant = _placeholder()
    eta: Constant = _placeholder(0.25)
    swy_lower: Constant = _placeholder()
    swy_upper: Constant = _placeholder()
    swy2_lower: Constant = _placeholder()
    swy2_upper: Constant = _placeholder()
    c_thm12: Constant = _placeholder()
    c_thm13: Constant = _placeholder()
    zeghib: Constant = _placeholder()

    def __post_init__(self):
        if not self.eta.value < self.margulis_mu.value / 2:
            raise InputError(
                f"eta ({self.eta.value}) must be smaller than margulis_mu/2 "
                f"({self.margulis_mu.value / 2})"
            )

    @classmethod
    def names(cls) -> list[str]:
        return [f.name for f in fields(cls)]

    @classmethod
    def from_mapping(cls, data: Mapping) -> "ConstantProvider":
        """Build from ``{"schoen": {"value": 0.1, "rigor": "rigorous"}, ...}``;
        a bare number means a placeholder of that value."""
        unknown = set(data) - set(cls.names())
        if unknown:
            raise InputError(f"unknown constant(s): {', '.join(sorted(unknown))}")
        kwargs = {}
        for name, entry in data.items():
            if isinstance(entry, Mapping):
                extra = set(entry) - {"value", "rigor"}
                if extra or "value" not in entry:
                    raise InputError(f"constant {name!r} needs exactly 'value' and optional 'rigor'")
                kwargs[name] = Constant(_number(entry["value"], name), entry.get("rigor", PLACEHOLDER))
            else:
                kwargs[name] = Constant(_number(entry, name), PLACEHOLDER)
        return cls(**kwargs)

    def to_dict(self) -> dict:
        return {
            name: {"value": getattr(self, name).value, "rigor": getattr(self, name).rigor}
            for name in self.names()
        }


def _number(value, name: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise InputError(f"{name} must be a number, got {value!r}")
    return float(value)


@dataclass(frozen=True)
class ManifoldDescriptor:
    """Invariants of a compact pinched manifold with totally geodesic boundary.

    ``laplace_eigs[k]`` is ``lambda_k`` of the boundary, counted from
    ``k = 0`` (so the first ``b`` entries vanish).  ``ell`` maps ``k`` to the
    length ``l_k`` of the shortest multicurve cutting the boundary surface
    into ``k + 1`` pieces; ``genus`` lists the genus of each boundary
    component.  Both are only meaningful for ``n = 3``.
    """

    cls: PinchedClass
    boundary_volumes: tuple[float, ...]
    total_volume: float
    collar_volume: float | None = None
    genus: tuple[int, ...] | None = None
    ell: Mapping[int, float] | None = None
    laplace_eigs: tuple[float, ...] | None = None

    def __post_init__(self):
        vols = tuple(float(v) for v in self.boundary_volumes)
        if not vols:
            raise InputError("at least one boundary component is required")
        if any(not (math.isfinite(v) and v > 0) for v in vols):
            raise InputError("boundary volumes must be positive and finite")
        object.__setattr__(self, "boundary_volumes", vols)
        if not (math.isfinite(self.total_volume) and self.total_volume > 0):
            raise InputError("total volume must be positive and finite")
        if self.collar_volume is not None:
            if not (math.isfinite(self.collar_volume) and self.collar_volume > 0):
                raise InputError("collar volume must be positive and finite")
            if self.collar_volume > self.total_volume:
                raise InputError("collar volume V1 cannot exceed the total volume V")
        if self.genus is not None:
            genus = tuple(int(g) for g in self.genus)
            if len(genus) != len(vols) or any(g < 2 for g in genus):
                raise InputError("genus needs one entry >= 2 per boundary component")
            object.__setattr__(self, "genus", genus)
        if self.ell is not None:
            ell = {int(k): float(v) for k, v in self.ell.items()}
            if any(k < 1 or not (v > 0 and math.isfinite(v)) for k, v in ell.items()):
                raise InputError("ell must map indices k >= 1 to positive lengths")
            object.__setattr__(self, "ell", dict(sorted(ell.items())))
        if self.laplace_eigs is not None:
            eigs = tuple(float(v) for v in self.laplace_eigs)
            if any(not (math.isfinite(v) and v >= 0) for v in eigs):
                raise InputError("laplace eigenvalues must be non-negative")
            if any(b < a for a, b in zip(eigs, eigs[1:])):
                raise InputError("laplace eigenvalues must be ascending")
            object.__setattr__(self, "laplace_eigs", eigs)

    @property
    def b(self) -> int:
        return len(self.boundary_volumes)

    @property
    def A(self) -> float:
        return max(self.boundary_volumes)

    @property
    def V(self) -> float:
        return float(self.total_volume)

    @property
    def V1(self) -> float:
        return float(self.total_volume if self.collar_volume is None else self.collar_volume)


@dataclass(frozen=True)
class BoundItem:
    name: str
    kind: str  # "lower" | "upper"
    target: str
    value: float
    rigor: str
    assumptions: str
    refs: tuple[str, ...] = ()
    constants: tuple[str, ...] = ()
    placeholders: tuple[str, ...] = ()
    extras: dict = field(default_factory=dict)

    def sort_key(self):
        return (self.target, self.kind, self.name)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "kind": self.kind,
            "target": self.target,
            "value": self.value,
            "rigor": self.rigor,
            "assumptions": self.assumptions,
            "refs": list(self.refs),
            "constants": list(self.constants),
            "placeholders": list(self.placeholders),
            "extras": dict(sorted(self.extras.items())),
        }


@dataclass(frozen=True)
class BoundReport:
    items: tuple[BoundItem, ...]
    derived: dict
    diagnostics: tuple[str, ...]


def _constants_used(provider: ConstantProvider, *names: str) -> dict:
    placeholders = tuple(n for n in names if getattr(provider, n).rigor == PLACEHOLDER)
    return {"constants": tuple(names), "placeholders": placeholders}


def _check_eigenvalue(lam: float) -> float:
    if not (math.isfinite(lam) and lam >= 0):
        raise DomainError(f"Laplace eigenvalue must be non-negative, got {lam!r}")
    return float(lam)


# ---------------------------------------------------------------------------
# Comparison with the boundary Laplacian


def roll_lower(cls: PinchedClass, A: float) -> float:
    """Lower bound for the rolling radius (distance from the boundary to its
    cut locus) when every boundary component has volume at most ``A``."""
    return width(cls, A).width


def _alpha_beta(cls: PinchedClass, A: float) -> tuple[float, float, float]:
    roll = roll_lower(cls, A)
    return roll, 1.0 + 1.0 / roll, 1.0 / roll + cls.n


def cgh_lower(cls: PinchedClass, A: float, lambda_k: float, k: int | str = "k") -> BoundItem:
    """Lower bound for ``sigma_k`` from ``lambda_k <= sigma^2 + alpha sigma``
    with ``alpha = 1 + 1/roll``.

    ``value`` is the positive root ``2 lambda / (alpha + sqrt(alpha^2 + 4
    lambda))``; ``extras["simple_form"]`` is the weaker
    ``lambda / (alpha + sqrt(lambda))``.
    """
    lam = _check_eigenvalue(lambda_k)
    roll, alpha, _ = _alpha_beta(cls, A)
    quadratic = 2.0 * lam / (alpha + math.sqrt(alpha * alpha + 4.0 * lam))
    simple = lam / (alpha + math.sqrt(lam))
    return BoundItem(
        name="cgh_lower",
        kind="lower",
        target=f"sigma_{k}",
        value=quadratic,
        rigor=EXPLICIT,
        assumptions=f"lambda_{k}(boundary) = {lam!r}; roll(M) >= width(A = {A!r})",
        refs=("Colbois-Girouard-Hassannezhad comparison", "tubular neighbourhood width"),
        extras={"alpha": alpha, "roll_lower": roll, "simple_form": simple, "lambda": lam},
    )


def cgh_upper(cls: PinchedClass, A: float, lambda_k: float, k: int | str = "k") -> BoundItem:
    """Upper bound ``sigma_k <= beta + sqrt(lambda_k)``, ``beta = 1/roll + n``."""
    lam = _check_eigenvalue(lambda_k)
    roll, _, beta = _alpha_beta(cls, A)
    return BoundItem(
        name="cgh_upper",
        kind="upper",
        target=f"sigma_{k}",
        value=beta + math.sqrt(lam),
        rigor=EXPLICIT,
        assumptions=f"lambda_{k}(boundary) = {lam!r}; roll(M) >= width(A = {A!r})",
        refs=("Colbois-Girouard-Hassannezhad comparison", "tubular neighbourhood width"),
        extras={"beta": beta, "roll_lower": roll, "lambda": lam},
    )


def sigma_b_lower_thm12(
    cls: PinchedClass, A: float, provider: ConstantProvider, b: int | str = "b"
) -> BoundItem:
    """Lower bound for ``sigma_b`` (``b`` = number of boundary components),
    ``n >= 4``: the comparison lower bound fed with Schoen's
    ``lambda_b(boundary) >= schoen / A^2``.  Decays like
    ``A^-(2 + 1/(kappa (n-2)))``."""
    if cls.n < 4:
        raise ScopeError("the sigma_b bound via Schoen's estimate needs n >= 4; use the dimension-3 path")
    lam = provider.schoen.value / (A * A)
    base = cgh_lower(cls, A, lam, b)
    return BoundItem(
        name="sigma_b_lower_schoen",
        kind="lower",
        target=f"sigma_{b}",
        value=base.value,
        rigor=CONSTANT_DEPENDENT,
        assumptions=f"A = {A!r}; lambda_b(boundary) >= schoen / A^2",
        refs=base.refs + ("Schoen lower bound for lambda_1",),
        extras={**base.extras, "exponent": 2.0 + 1.0 / (cls.kappa * (cls.n - 2))},
        **_constants_used(provider, "schoen"),
    )


def sigma_k_dim3_swy(
    descriptor: ManifoldDescriptor, k: int, provider: ConstantProvider
) -> tuple[BoundItem, ...]:
    """Dimension-3 bounds for ``sigma_k`` through the Schoen-Wolpert-Yau
    estimates on the (connected) boundary surface of genus ``g``.

    For ``1 <= k <= 2g-3`` returns a lower and an upper item driven by
    ``l_k``; for ``k = 2g-2`` the ``l``-free pair; for ``k > 2g-2`` only the
    lower item (``lambda_k >= lambda_{2g-2}``).
    """
    cls = descriptor.cls
    if cls.n != 3:
        raise ScopeError("Schoen-Wolpert-Yau bounds apply to n = 3 only")
    if descriptor.genus is None:
        raise InputError("genus is required for the dimension-3 bounds")
    if descriptor.b != 1:
        raise ScopeError("the dimension-3 bounds need a connected boundary")
    g = descriptor.genus[0]
    if k < 1:
        raise ScopeError(f"k must be >= 1, got {k}")
    kappa, A = cls.kappa, descriptor.A
    if k <= 2 * g - 3:
        if descriptor.ell is None or k not in descriptor.ell:
            raise InputError(f"ell[{k}] is required for k <= 2g-3")
        ell = descriptor.ell[k]
        low = cgh_lower(cls, A, provider.swy_lower.value * kappa**3 * ell, k)
        up = cgh_upper(cls, A, provider.swy_upper.value * ell, k)
        refs = ("Schoen-Wolpert-Yau surface estimates",)
        return (
            BoundItem(
                name="sigma_k_lower_swy", kind="lower", target=f"sigma_{k}", value=low.value,
                rigor=CONSTANT_DEPENDENT,
                assumptions=f"n = 3, genus {g}, l_{k} = {ell!r}, 1 <= k <= 2g-3",
                refs=low.refs + refs, extras={**low.extras, "ell": ell},
                **_constants_used(provider, "swy_lower"),
            ),
            BoundItem(
                name="sigma_k_upper_swy", kind="upper", target=f"sigma_{k}", value=up.value,
                rigor=CONSTANT_DEPENDENT,
                assumptions=f"n = 3, genus {g}, l_{k} = {ell!r}, 1 <= k <= 2g-3",
                refs=up.refs + refs, extras={**up.extras, "ell": ell},
                **_constants_used(provider, "swy_upper"),
            ),
        )
    refs = ("Schoen-Wolpert-Yau surface estimates",)
    low = cgh_lower(cls, A, provider.swy2_lower.value * kappa**2, k)
    items = [
        BoundItem(
            name="sigma_k_lower_swy_2g2", kind="lower", target=f"sigma_{k}", value=low.value,
            rigor=CONSTANT_DEPENDENT,
            assumptions=f"n = 3, genus {g}, k >= 2g-2",
            refs=low.refs + refs, extras=low.extras,
            **_constants_used(provider, "swy2_lower"),
        )
    ]
    if k == 2 * g - 2:
        up = cgh_upper(cls, A, provider.swy2_upper.value, k)
        items.append(
            BoundItem(
                name="sigma_k_upper_swy_2g2", kind="upper", target=f"sigma_{k}", value=up.value,
                rigor=CONSTANT_DEPENDENT,
                assumptions=f"n = 3, genus {g}, k = 2g-2",
                refs=up.refs + refs, extras=up.extras,
                **_constants_used(provider, "swy2_upper"),
            )
        )
    return tuple(items)


def sigma1_lower_thm13(
    descriptor: ManifoldDescriptor, provider: ConstantProvider, variant: str = "VV1"
) -> BoundItem:
    """``sigma_1 >= c / (b A^{2n/(kappa(n-2))} V V1)``.

    ``variant="V2"`` gives the weaker form with ``V^2`` in place of ``V V1``.
    ``V1`` (volume of the boundary thin part together with the boundary
    tube) defaults to ``V``.
    """
    cls = descriptor.cls
    n, kappa = cls.n, cls.kappa
    b, A, V = descriptor.b, descriptor.A, descriptor.V
    if variant == "VV1":
        second, name = descriptor.V1, "sigma1_lower_volume"
    elif variant == "V2":
        second, name = V, "sigma1_lower_volume_squared"
    else:
        raise DomainError(f"variant must be 'VV1' or 'V2', got {variant!r}")
    exponent = 2.0 * n / (kappa * (n - 2))
    value = provider.c_thm13.value / (b * A**exponent * V * second)
    assumptions = f"b = {b}, A = {A!r}, V = {V!r}"
    if variant == "VV1":
        assumptions += f", V1 = {descriptor.V1!r}"
        if descriptor.collar_volume is None:
            assumptions += " (defaulted to V)"
    return BoundItem(
        name=name,
        kind="lower",
        target="sigma_1",
        value=value,
        rigor=CONSTANT_DEPENDENT,
        assumptions=assumptions,
        refs=("thick-thin oscillation argument",),
        extras={"A_exponent": exponent},
        **_constants_used(provider, "c_thm13"),
    )


def _sech_power_integral(p: int, kappa: float) -> float:
    # int_0^inf cosh^{-p}(kappa t) dt = B(p/2, 1/2) / (2 kappa)
    return math.exp(
        0.5 * math.log(math.pi) + math.lgamma(p / 2) - math.lgamma((p + 1) / 2)
    ) / (2.0 * kappa)


def stekdir_floor(cls: PinchedClass) -> BoundItem:
    """Lower bound for the first Steklov-Dirichlet eigenvalue of the
    boundary collar: ``1 / int_0^inf cosh^{-(n-1)}(kappa t) dt``, which is at
    least ``kappa (n-1) / 2^{n-1}`` (``extras["closed_form"]``)."""
    n, kappa = cls.n, cls.kappa
    sharper = 1.0 / _sech_power_integral(n - 1, kappa)
    closed = kappa * (n - 1) / 2.0 ** (n - 1)
    return BoundItem(
        name="stekdir_floor",
        kind="lower",
        target="sigma_1^D",
        value=sharper,
        rigor=EXPLICIT,
        assumptions="Fermi-coordinate Jacobian >= cosh^{n-1}(kappa t)",
        refs=("Steklov-Dirichlet collar estimate",),
        extras={"closed_form": closed, "sharper": sharper},
    )


# ---------------------------------------------------------------------------
# Small-eigenvalue constructions


def example51_copies(b: int, j: int) -> int:
    """Number of copies of ``M`` glued into the ``j``-th manifold: ``M`` itself
    plus ``b`` arms of ``j`` doubled blocks each."""
    return 1 + 2 * b * j


def example51_upper(descriptor: ManifoldDescriptor, j: int) -> BoundItem:
    """Upper bound ``V / (j w^2 A)`` for ``sigma_{b-1}`` of the ``j``-th glued
    manifold, decaying like ``1 / vol(M_j)``.

    ``extras`` carries the volume-normalised form
    ``(b+1) V^2 / (w^2 A vol(M_j))`` with ``vol(M_j) = (1 + 2bj) V`` and
    whether it dominates the first form (it does not for ``b >= 2``).
    """
    b = descriptor.b
    if b < 2:
        raise ScopeError("the gluing construction needs at least two boundary components")
    if int(j) != j or j < 1:
        raise DomainError(f"j must be an integer >= 1, got {j!r}")
    cls, A, V = descriptor.cls, descriptor.A, descriptor.V
    w = width(cls, A).width
    first = V / (j * w * w * A)
    copies = example51_copies(b, j)
    vol_j = copies * V
    second = (b + 1) * V * V / (w * w * A * vol_j)
    return BoundItem(
        name="example51_upper",
        kind="upper",
        target=f"sigma_{b - 1}",
        value=first,
        rigor=EXPLICIT,
        assumptions=f"M_j glued from {copies} copies of M (b = {b}, j = {j})",
        refs=("gluing construction with linear test functions",),
        extras={
            "j": int(j),
            "copies": copies,
            "vol_Mj": vol_j,
            "volume_form": second,
            "volume_form_dominates": first <= second,
            "separation_lower": 2 * j * w,
            "width": w,
        },
    )


def thm52_item(n: int, k: int, epsilon: float, grid_points: int = 2048) -> BoundItem:
    """What-if upper bound for ``sigma_k`` when the boundary components are
    joined by an orthogonal arc of length ``epsilon``."""
    if int(k) != k or k < 1:
        raise DomainError(f"k must be an integer >= 1, got {k!r}")
    if not (math.isfinite(epsilon) and epsilon > 0):
        raise DomainError(f"epsilon must be positive, got {epsilon!r}")
    spec = dirichlet_ball_full_spectrum(n - 1, 1.0, 1.0, k + 1, grid_points=grid_points)
    lam = spec.nth(k + 1)
    return BoundItem(
        name="short_arc_upper",
        kind="upper",
        target=f"sigma_{k}",
        value=0.5 * math.cosh(1.0) * lam * epsilon,
        rigor=EXPLICIT,
        assumptions=f"hyperbolic, orthogonal arc of length epsilon = {epsilon!r} in the thin part",
        refs=("Dirichlet eigenfunctions of the unit hyperbolic ball",),
        extras={
            "epsilon": float(epsilon),
            "ball_eigenvalue": lam,
            "ball_eigenvalue_error": spec.nth_error(k + 1),
            "large_radius_limit_stated": (n - 1) ** 2 / 4,
            "bottom_of_spectrum": (n - 2) ** 2 / 4,
        },
    )


# ---------------------------------------------------------------------------
# Report


def _attempt(items: list, diagnostics: list, label: str, fn, *args):
    try:
        produced = fn(*args)
    except StekboundError as exc:
        diagnostics.append(f"{label}: skipped ({exc})")
        return
    if isinstance(produced, BoundItem):
        items.append(produced)
    else:
        items.extend(produced)


def assemble_report(
    descriptor: ManifoldDescriptor,
    provider: ConstantProvider | None = None,
    *,
    thm52: tuple[int, float] | None = None,
    example51_j: int | None = None,
) -> BoundReport:
    """Evaluate every bound applicable to ``descriptor``.

    Always: the ``sigma_1`` volume bounds and the collar floor; ``n >= 4``:
    the ``sigma_b`` bound; with ``laplace_eigs``: the comparison pair for
    each ``k >= 1``; ``n = 3`` with genus and ``ell``: the surface-based
    pairs.  ``thm52=(k, epsilon)`` and ``example51_j`` add what-if entries.
    Failures become diagnostics rather than aborting the report.
    """
    provider = provider or ConstantProvider()
    cls = descriptor.cls
    n, kappa, A, V = cls.n, cls.kappa, descriptor.A, descriptor.V
    items: list[BoundItem] = []
    diagnostics: list[str] = []

    _attempt(items, diagnostics, "sigma1_lower_volume", sigma1_lower_thm13, descriptor, provider, "VV1")
    _attempt(items, diagnostics, "sigma1_lower_volume_squared", sigma1_lower_thm13, descriptor, provider, "V2")
    items.append(stekdir_floor(cls))
    if n >= 4:
        _attempt(items, diagnostics, "sigma_b_lower_schoen", sigma_b_lower_thm12, cls, A, provider, descriptor.b)
    if descriptor.laplace_eigs is not None:
        for k, lam in enumerate(descriptor.laplace_eigs):
            if k == 0:
                continue
            _attempt(items, diagnostics, f"cgh_lower[{k}]", cgh_lower, cls, A, lam, k)
            _attempt(items, diagnostics, f"cgh_upper[{k}]", cgh_upper, cls, A, lam, k)
    if n == 3 and descriptor.genus is not None:
        ks = sorted(descriptor.ell) if descriptor.ell else []
        g = descriptor.genus[0]
        for k in ks + ([2 * g - 2] if 2 * g - 2 not in ks else []):
            _attempt(items, diagnostics, f"swy[{k}]", sigma_k_dim3_swy, descriptor, k, provider)
    if thm52 is not None:
        _attempt(items, diagnostics, "short_arc_upper", thm52_item, n, thm52[0], thm52[1])
    if example51_j is not None:
        _attempt(items, diagnostics, "example51_upper", example51_upper, descriptor, example51_j)

    if descriptor.collar_volume is None:
        diagnostics.append("V1 not given; defaulted to V (conservative since V1 <= V)")
    mu = provider.margulis_mu
    floor = euclidean_ball_volume(n) * mu.value**n
    if V < floor:
        diagnostics.append(
            f"warning: V = {V!r} is below the Margulis volume floor {floor!r} "
            f"(margulis_mu is {mu.rigor})"
        )
    boundary_floor = hyperbolic_ball_volume(n - 1, kappa, mu.value)
    small = [v for v in descriptor.boundary_volumes if v < boundary_floor]
    if small:
        diagnostics.append(
            f"warning: {len(small)} boundary volume(s) below the Margulis floor "
            f"{boundary_floor!r} (margulis_mu is {mu.rigor})"
        )
    if provider.zeghib.rigor == RIGOROUS:
        total = math.fsum(descriptor.boundary_volumes)
        if V < provider.zeghib.value * total:
            diagnostics.append(
                f"flag: zeghib-violation: V = {V!r} < {provider.zeghib.value!r} * vol(boundary) = "
                f"{provider.zeghib.value * total!r}"
            )
    else:
        diagnostics.append("zeghib volume check skipped (placeholder constant)")
    for item in items:
        if not math.isfinite(item.value):
            diagnostics.append(f"warning: {item.name} for {item.target} is not finite")

    w = width(cls, A)
    derived = {
        "b": descriptor.b,
        "A": A,
        "V": V,
        "V1": descriptor.V1,
        "width": w.width,
        "width_residual": w.residual,
        "roll_lower": w.width,
        "width_closed_form_lower": width_closed_form_lower(cls, A),
        "disjointness_gap": disjointness_gap(cls, A, A),
    }
    items.sort(key=BoundItem.sort_key)
    return BoundReport(items=tuple(items), derived=derived, diagnostics=tuple(diagnostics))
