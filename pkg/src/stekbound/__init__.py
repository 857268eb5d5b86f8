"""Numerical toolkit for Steklov eigenvalue bounds on compact pinched
negatively curved manifolds with totally geodesic boundary."""

from __future__ import annotations

from .bounds import (
    BoundItem,
    BoundReport,
    Constant,
    ConstantProvider,
    ManifoldDescriptor,
    assemble_report,
    cgh_lower,
    cgh_upper,
    example51_upper,
    sigma1_lower_thm13,
    sigma_b_lower_thm12,
    sigma_k_dim3_swy,
    stekdir_floor,
)
from .errors import (
    BracketError,
    ConvergenceError,
    DomainError,
    InputError,
    RangeError,
    ResolutionError,
    ScopeError,
    StekboundError,
)
from .hypgeom import (
    PinchedClass,
    QuadratureSpec,
    RootFindSpec,
    adaptive_quad,
    dist_function_r,
    hyperbolic_ball_volume,
    monotone_invert,
)
from .sturm import (
    RadialDirichletProblem,
    ShellProblem,
    Spectrum,
    dirichlet_ball_full_spectrum,
    dirichlet_ball_spectrum,
    shell_steklov_dirichlet,
    steklov_upper_bound_thm52,
)
from .tube import (
    disjointness_gap,
    ideal_triangle_leg,
    tube_volume_bounds,
    tube_volume_lower_lemma,
    width,
    width_closed_form_lower,
)

__version__ = "0.1.0"
