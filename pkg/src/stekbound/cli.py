"""``stekbound`` command-line front end.

Exit codes: 0 success, 1 verification failure, 2 input error.  Every input
error is reported as a single line on stderr.
"""

from __future__ import annotations

import argparse
import math
import sys
from typing import Sequence

import numpy as np

from . import report as report_mod
from . import verify as verify_mod
from .bounds import stekdir_floor
from .errors import ResolutionError, StekboundError
from .hypgeom import PinchedClass, adaptive_quad
from .sturm import ShellProblem, dirichlet_ball_full_spectrum, shell_delta_cap, shell_steklov_dirichlet
from .tube import disjointness_gap, width, width_closed_form_lower

PROG = "stekbound"
EXIT_OK, EXIT_VERIFY, EXIT_INPUT = 0, 1, 2


class UsageError(Exception):
    """Bad command-line input; carries the one-line message."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would print the usage block too
        raise UsageError(message.splitlines()[0])


def _number(text: str) -> float:
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def positive(text: str) -> float:
    x = _number(text)
    if not (x > 0 and math.isfinite(x)):
        raise argparse.ArgumentTypeError(f"must be positive and finite, got {text}")
    return x


def positive_or_inf(text: str) -> float:
    x = _number(text)
    if not x > 0:
        raise argparse.ArgumentTypeError(f"must be positive (or inf), got {text}")
    return x


def non_negative(text: str) -> float:
    x = _number(text)
    if not (x >= 0 and math.isfinite(x)):
        raise argparse.ArgumentTypeError(f"must be non-negative and finite, got {text}")
    return x


def kappa_value(text: str) -> float:
    x = _number(text)
    if not 0 < x <= 1:
        raise argparse.ArgumentTypeError(f"must lie in (0, 1], got {text}")
    return x


def int_at_least(lowest: int):
    def parse(text: str) -> int:
        try:
            value = int(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
        if value < lowest:
            raise argparse.ArgumentTypeError(f"must be >= {lowest}, got {value}")
        return value

    parse.__name__ = f"integer >= {lowest}"
    return parse


def _fmt(x: float) -> str:
    return report_mod.format_float(x) if math.isfinite(x) else str(x)


# ---------------------------------------------------------------------------
# subcommands


def cmd_width(args, out) -> int:
    cls = PinchedClass(args.n, args.kappa)
    closed = width_closed_form_lower(cls, args.area)
    if args.closed_form:
        out(f"closed_form_lower {_fmt(closed)}")
        return EXIT_OK
    w = width(cls, args.area)
    other = args.area if args.area2 is None else args.area2
    out(f"width             {_fmt(w.width)}")
    out(f"closed_form_lower {_fmt(closed)}")
    out(f"ratio             {_fmt(closed / w.width)}")
    out(f"disjointness_gap  {_fmt(disjointness_gap(cls, args.area, other))}")
    out(f"residual          {w.residual:.3e}")
    return EXIT_OK


def cmd_ball(args, out) -> int:
    try:
        spec = dirichlet_ball_full_spectrum(
            args.m, args.kappa, args.radius, args.k, l_max=args.l_max, grid_points=args.grid
        )
    except ResolutionError as exc:
        flag = "--l-max" if "l_max" in str(exc) else "--grid"
        raise UsageError(f"argument {flag}: {exc}") from None
    out(f"{'index':<9} {'eigenvalue':>24} {'error_estimate':>14} {'l':>3} {'mult':>5}")
    count = 0
    warnings = []
    for value, err, mult, l, flags in zip(
        spec.values, spec.error_estimates, spec.multiplicities, spec.labels, spec.flags
    ):
        if count >= args.k:
            break
        index = f"{count + 1}" if mult == 1 else f"{count + 1}-{count + mult}"
        ls = ",".join(str(x) for x in l)
        out(f"{index:<9} {_fmt(value):>24} {err:>14.3e} {ls:>3} {mult:>5}")
        warnings.extend(f"warning: eigenvalue {index}: {flag}" for flag in flags)
        count += mult
    for line in warnings:
        out(line)
    return EXIT_OK


def cmd_shell(args, out) -> int:
    cls = PinchedClass(args.n, args.kappa)
    mus = tuple(sorted({0.0, *args.mu}))
    try:
        res = shell_steklov_dirichlet(ShellProblem(cls, args.delta, mus, args.grid))
    except ResolutionError as exc:
        raise UsageError(f"argument --grid: {exc}") from None
    delta = res.delta
    integral, _ = adaptive_quad(lambda t: np.cosh(cls.kappa * t) ** -(cls.n - 1), 0.0, delta)
    floor = stekdir_floor(cls)
    out(f"delta {_fmt(delta)}")
    out(f"{'mu':>24} {'sigma':>24} {'error_estimate':>14}")
    for mu, value, err in zip(res.mu, res.values, res.error_estimates):
        out(f"{_fmt(mu):>24} {_fmt(value):>24} {err:>14.3e}")
    out(f"closed_form_mu0   {_fmt(1.0 / integral)}")
    out(f"floor             {_fmt(floor.extras['closed_form'])}")
    out(f"floor_sharper     {_fmt(floor.extras['sharper'])}")
    if res.truncated:
        out(
            f"warning: depth-truncated: delta capped at {_fmt(shell_delta_cap(cls.kappa))}; "
            f"neglected tail of the collar integral <= {res.truncation_bound:.3e}"
        )
    for mu, flags in zip(res.mu, res.flags):
        out(*(f"warning: mu = {_fmt(mu)}: {flag}" for flag in flags if flag != "depth-truncated"))
    return EXIT_OK


def cmd_report(args, out) -> int:
    path = report_mod.example_descriptor_path() if args.example else args.input
    descriptor = report_mod.load_json(path)
    constants = report_mod.load_json(args.constants) if args.constants else None
    if (args.thm52_k is None) != (args.thm52_epsilon is None):
        raise UsageError("--thm52-k and --thm52-epsilon must be given together")
    thm52 = None if args.thm52_k is None else (args.thm52_k, args.thm52_epsilon)
    doc = report_mod.run_report(descriptor, constants, thm52=thm52, example51_j=args.example51_j)
    text = report_mod.dumps(doc) if args.format == "json" else report_mod.render_text(doc)
    out(text.rstrip("\n"))
    return EXIT_OK


def cmd_verify(args, out) -> int:
    return EXIT_OK if verify_mod.run(args.suite, out) else EXIT_VERIFY


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog=PROG, description="Steklov eigenvalue bounds for pinched manifolds with totally geodesic boundary.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("width", help="width function and its closed-form lower bound")
    p.add_argument("--n", type=int_at_least(3), required=True, help="manifold dimension")
    p.add_argument("--kappa", type=kappa_value, required=True, help="pinching constant in (0, 1]")
    p.add_argument("--area", type=positive, required=True, help="volume of the boundary hypersurface")
    p.add_argument("--area2", type=positive, help="second hypersurface volume for the disjointness gap")
    p.add_argument("--closed-form", action="store_true", help="print only the closed-form lower bound")
    p.set_defaults(func=cmd_width)

    p = sub.add_parser("ball", help="Dirichlet spectrum of a geodesic ball")
    p.add_argument("--m", type=int_at_least(2), required=True, help="ball dimension")
    p.add_argument("--kappa", type=kappa_value, required=True)
    p.add_argument("--radius", type=positive, required=True)
    p.add_argument("--k", type=int_at_least(1), required=True, help="eigenvalues to report, with multiplicity")
    p.add_argument("--l-max", type=int_at_least(0), help="highest angular index (default: automatic)")
    p.add_argument("--grid", type=int_at_least(16), default=2048)
    p.set_defaults(func=cmd_ball)

    p = sub.add_parser("shell", help="Steklov-Dirichlet values of the boundary collar")
    p.add_argument("--n", type=int_at_least(3), required=True)
    p.add_argument("--kappa", type=kappa_value, required=True)
    p.add_argument("--delta", type=positive_or_inf, required=True, help="collar depth (inf allowed)")
    p.add_argument("--mu", type=non_negative, nargs="*", default=[], help="cross-section eigenvalues")
    p.add_argument("--grid", type=int_at_least(16), default=2048)
    p.set_defaults(func=cmd_shell)

    p = sub.add_parser("report", help="bound report for a manifold descriptor")
    source = p.add_mutually_exclusive_group(required=True)
    source.add_argument("--input", help="descriptor JSON file")
    source.add_argument("--example", action="store_true", help="use the bundled example descriptor")
    p.add_argument("--constants", help="constant-provider JSON file")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--thm52-k", type=int_at_least(1), help="short-arc what-if: eigenvalue index")
    p.add_argument("--thm52-epsilon", type=positive, help="short-arc what-if: arc length")
    p.add_argument("--example51-j", type=int_at_least(1), help="gluing what-if: number of blocks per arm")
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("verify", help="run the invariant suites")
    p.add_argument("--suite", choices=("hypgeom", "tube", "sturm", "bounds", "all"), default="all")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    def out(*lines):
        for line in lines:
            print(line)

    try:
        args = build_parser().parse_args(argv)
        return args.func(args, out)
    except UsageError as exc:
        print(f"{PROG}: error: {exc}", file=sys.stderr)
    except (StekboundError, ValueError) as exc:
        message = " ".join(str(exc).split())
        print(f"{PROG}: error: {message}", file=sys.stderr)
    return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
