"""Command-line front end.

Exit codes: 0 success or verification passed, 1 verification failed (or a
numerical failure), 2 usage or domain error.
"""

from __future__ import annotations

import argparse
import dataclasses
import os
import sys
from typing import Sequence

import numpy as np

from . import __version__
from .errors import DomainError, NonConvergenceError
from .kernel import KernelQuery, phi
from .potential import j_alpha_selfsimilar, j_alpha_separable
from .quadrature import QuadratureSpec
from .regions import (
    PlaneParams,
    Problem,
    admissible,
    classify,
    fujita_lambda0,
    lower_threshold,
    on_curve,
    upper_threshold,
    verdict,
)
from .report_io import ReportFormatError, make_envelope, write_csv, write_json
from .solutions import (
    N0_constant,
    envelope_M,
    envelope_value,
    ball_mass_search,
    make_lambda1_super,
    make_selfsimilar,
    make_supercritical_super,
)
from .verify import (
    IDENTITIES,
    GridSpec,
    check_identity,
    check_xp_membership,
    default_radial_samples,
    default_super_grid,
    estimate_approx_constants,
    verify_super,
)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


class UsageError(Exception):
    pass


def _floats(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from exc


def _spec(args: argparse.Namespace) -> QuadratureSpec:
    return QuadratureSpec(args.quad_nodes, args.quad_tol, args.quad_refinements)


def _emit(args: argparse.Namespace, body: dict) -> None:
    envelope = make_envelope(body, args.created_at)
    if args.json:
        write_json(envelope, args.json)
    if not args.quiet:
        write_json(envelope, sys.stdout)


def _body(kind: str, params: dict, results: dict, passed: bool = True, refs: Sequence[str] = (), grid=None) -> dict:
    return {
        "kind": kind,
        "params": params,
        "refs": list(refs),
        "grid": grid,
        "results": results,
        "pass": passed,
        "tool_version": __version__,
    }


def _report_body(report, args: argparse.Namespace, extra_params: dict | None = None) -> dict:
    body = report.to_body()
    body["params"] = {**body["params"], **(extra_params or {}), "quadrature": _spec(args).as_dict()}
    return body


# --------------------------------------------------------------------------
# classify / phase diagram


def cmd_classify(args: argparse.Namespace) -> int:
    params = PlaneParams(args.n, args.p, args.lam, args.alpha)
    try:
        lam0 = fujita_lambda0(params.n, params.alpha)
    except DomainError:
        lam0 = None
    verdicts = {problem.value: verdict(problem, params).as_dict() for problem in Problem}
    results = {
        "region": classify(params).value,
        "on_curve": on_curve(params),
        "admissible": admissible(params),
        "fujita_lambda0": lam0,
        "lower_threshold": lower_threshold(params.n, params.p, params.lam),
        "upper_threshold": upper_threshold(params.n, params.lam),
        "verdicts": verdicts,
    }
    refs = ["regions A-E of the (lambda, alpha) plane", "critical exponent 1 + 2 alpha/(n + 2 - 2 alpha)"]
    _emit(args, _body("classify", params.as_dict(), results, True, refs))
    return EXIT_OK


def phase_raster(n: int, p: float, lambda_max: float, alpha_max: float, resolution: int) -> list[list]:
    """Cells ``(lambda_i, alpha_j) = (lambda_max i / R, alpha_max j / R)`` for ``i, j = 1..R``."""
    rows = []
    for i in range(1, resolution + 1):
        lam = lambda_max * i / resolution
        for j in range(1, resolution + 1):
            alpha = alpha_max * j / resolution
            pp = PlaneParams(n, p, lam, alpha)
            rows.append([lam, alpha, classify(pp).value, int(on_curve(pp))])
    return rows


def boundary_curves(n: int, p: float, lambda_max: float, resolution: int) -> tuple[list[list], list[list]]:
    lams = [1.0 + (lambda_max - 1.0) * k / resolution for k in range(resolution + 1)]
    lower = [[lam, lower_threshold(n, p, lam)] for lam in lams]
    upper = [[lam, upper_threshold(n, lam)] for lam in lams]
    return lower, upper


def cmd_phase_diagram(args: argparse.Namespace) -> int:
    if args.resolution < 16:
        raise UsageError("--resolution must be at least 16")
    if not (args.lambda_max > 1 and args.alpha_max > 0):
        raise UsageError("--lambda-max must exceed 1 and --alpha-max must be positive")
    PlaneParams(args.n, args.p, 1.0, 1.0)
    rows = phase_raster(args.n, args.p, args.lambda_max, args.alpha_max, args.resolution)
    lower, upper = boundary_curves(args.n, args.p, args.lambda_max, args.resolution)
    header = ["lambda", "alpha", "region", "on_curve"]
    if args.out_dir:
        os.makedirs(args.out_dir, exist_ok=True)
        write_csv(rows, header, os.path.join(args.out_dir, "raster.csv"))
        write_csv(lower, ["lambda", "alpha"], os.path.join(args.out_dir, "curve_lower.csv"))
        write_csv(upper, ["lambda", "alpha"], os.path.join(args.out_dir, "curve_upper.csv"))
    elif args.csv:
        write_csv(rows, header, args.csv)
    else:
        write_csv(rows, header, sys.stdout)
    return EXIT_OK


# --------------------------------------------------------------------------
# verify


def _grid(args: argparse.Namespace, n: int) -> GridSpec:
    base = default_super_grid(n, args.grid_tmin, args.grid_tmax, args.grid_tcount, args.grid_count)
    if args.grid_extent is not None:
        base = dataclasses.replace(base, x_extent=args.grid_extent)
    return base


def cmd_verify(args: argparse.Namespace) -> int:
    spec = _spec(args)
    kind = args.subkind
    if kind == "super-lambda1":
        sol = make_lambda1_super(args.alpha, args.t_shift, args.rate)
        report = verify_super(sol, _grid(args, args.n), args.tol, spec)
        body = _report_body(report, args)
    elif kind == "super-supercritical":
        sol = make_supercritical_super(args.n, args.lam, args.alpha, args.t_shift)
        if args.amplitude_scale != 1.0:
            sol = dataclasses.replace(sol, A=sol.A * args.amplitude_scale)
        report = verify_super(sol, _grid(args, args.n), args.tol, spec)
        body = _report_body(report, args, {"amplitude_scale": args.amplitude_scale})
    elif kind == "approx":
        sol = make_selfsimilar(args.n, args.lam, args.alpha)
        radii = default_radial_samples(args.samples_max, args.samples_step, args.samples_tail)
        samples = [[r] + [0.0] * (sol.n - 1) for r in radii]
        report = estimate_approx_constants(sol, samples, spec)
        body = _report_body(report, args)
    elif kind == "identities":
        names = IDENTITIES if args.which == "all" else (args.which,)
        bodies = []
        for name in names:
            # the space-time quadrature of the semigroup check is held to 1e-6
            t = args.tol if args.tol is not None else (1e-6 if name == "semigroup" else 1e-8)
            bodies.append(_report_body(check_identity(name, None, t, spec), args))
        if len(bodies) == 1:
            body = bodies[0]
        else:
            passed = all(b["pass"] for b in bodies)
            body = _body("identity-suite", {"which": list(names)}, {"reports": bodies}, passed, ["closed-form identities"])
    elif kind == "xp":
        sol = make_selfsimilar(args.n, args.lam, args.alpha)
        report = check_xp_membership(sol, args.p, args.t_cut, spec)
        body = _report_body(report, args)
    else:  # pragma: no cover - argparse restricts choices
        raise UsageError(f"unknown verification {kind!r}")
    _emit(args, body)
    return EXIT_OK if body["pass"] else EXIT_FAIL


# --------------------------------------------------------------------------
# constants, profiles, point evaluations


def _entry(value, label: str, derivation: str) -> dict:
    return {"defined": True, "value": value, "label": label, "derivation": derivation}


def _absent(label: str, reason: str) -> dict:
    return {"defined": False, "value": None, "label": label, "reason": reason}


def cmd_constants(args: argparse.Namespace) -> int:
    n, lam, alpha = args.n, args.lam, args.alpha
    params = PlaneParams(n, 1.0, lam, alpha)
    spec = _spec(args)
    out: dict[str, dict] = {}
    if lam < 1:
        out["M"] = _entry(envelope_M(lam, alpha), "envelope constant Gamma(b+1)/Gamma(alpha+b+1)", "closed-form")
    else:
        out["M"] = _absent("envelope constant", "defined only for lambda < 1")
    bound = upper_threshold(n, lam) if lam > 1 else None
    if lam > 1 and alpha < bound:
        sol = make_supercritical_super(n, lam, alpha)
        out["beta"] = _entry(sol.beta, "kernel order (n+2)/2 - lambda alpha/(lambda-1)", "closed-form")
        out["A"] = _entry(sol.A, "sharp amplitude of A Phi_beta", "closed-form")
        out["delta"] = _entry(make_selfsimilar(n, lam, alpha).delta, "profile power (n+2)/2 - alpha lambda/(lambda-1)", "closed-form")
    else:
        reason = "needs lambda > 1 and alpha < (n+2)/2 (1 - 1/lambda)"
        out["beta"] = _absent("kernel order", reason)
        out["A"] = _absent("sharp amplitude", reason)
        out["delta"] = _absent("profile power", reason)
    try:
        out["lambda0"] = _entry(fujita_lambda0(n, alpha), "critical exponent 1 + 2 alpha/(n + 2 - 2 alpha)", "closed-form")
    except DomainError as exc:
        out["lambda0"] = _absent("critical exponent", str(exc))
    if lam < 1 and n <= 3:
        found = ball_mass_search(n, spec, args.c_resolution)
        out["C_n"] = _entry(found.value, "minimum heat mass of the ball |xi|^2 < tau", "numerical")
        out["C_n"]["argmin"] = {"distance": found.distance, "tau": found.tau, "resolution": found.resolution}
        out["N0"] = _entry(N0_constant(n, lam, alpha, spec, found.value), "C(n)/Gamma(alpha) times a Beta-type integral", "numerical")
    else:
        reason = "needs lambda < 1 and n <= 3"
        out["C_n"] = _absent("minimum heat mass of a ball", reason)
        out["N0"] = _absent("bootstrap fixed point", reason)
    _emit(args, _body("constants", {**params.as_dict(), "quadrature": spec.as_dict()}, out, True, ["explicit constants"]))
    return EXIT_OK


def cmd_profile(args: argparse.Namespace) -> int:
    if args.count < 2:
        raise UsageError("--count must be at least 2")
    if args.lam < 1:
        ts = np.linspace(0.0, args.t_max, args.count)[1:]
        rows = [[float(t), envelope_value(args.lam, args.alpha, 0.0, float(t))] for t in ts]
        header = ["t", "envelope"]
    else:
        sol = make_selfsimilar(args.n, args.lam, args.alpha)
        zs = np.linspace(0.0, args.z_max, args.count)
        rows = [[float(z), float(sol.w_r2(z * z)), float(sol.w_alpha_r2(z * z))] for z in zs]
        header = ["z", "w", "w_alpha"]
    write_csv(rows, header, args.csv if args.csv else sys.stdout)
    return EXIT_OK


def cmd_potential(args: argparse.Namespace) -> int:
    spec = _spec(args)
    x = args.x
    if args.source == "lambda1":
        sol = make_lambda1_super(args.alpha, args.t_shift, args.rate)
        value = float(j_alpha_separable(args.alpha, sol.reduced_input(), x, args.t, spec))
        params = {**sol.as_dict(), "x": x, "t": args.t}
    elif args.source == "supercritical":
        sol = make_supercritical_super(len(x), args.lam, args.alpha, args.t_shift)
        value = float(j_alpha_separable(args.alpha, sol.reduced_input(), x, args.t, spec))
        params = {**sol.as_dict(), "x": x, "t": args.t}
    else:
        sol = make_selfsimilar(len(x), args.lam, args.alpha)
        value = j_alpha_selfsimilar(sol, x, args.t, spec)
        params = {**sol.as_dict(), "x": x, "t": args.t}
    results = {"source": args.source, "value": value}
    _emit(args, _body("potential", {**params, "quadrature": spec.as_dict()}, results, True, ["fractional potential J_alpha"]))
    return EXIT_OK


def cmd_kernel(args: argparse.Namespace) -> int:
    value = phi(KernelQuery(args.alpha, tuple(args.x), args.t))
    params = {"alpha": args.alpha, "x": args.x, "t": args.t}
    _emit(args, _body("kernel", params, {"value": value}, True, ["fractional heat kernel"]))
    return EXIT_OK


# --------------------------------------------------------------------------
# parser


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--quad-nodes", type=int, default=64, help="base node count of Gaussian rules")
    p.add_argument("--quad-tol", type=float, default=1e-9, help="relative quadrature tolerance")
    p.add_argument("--quad-refinements", type=int, default=12, help="maximum refinement levels")
    p.add_argument("--json", metavar="PATH", help="also write the JSON report here")
    p.add_argument("--csv", metavar="PATH", help="write CSV output here instead of stdout")
    p.add_argument("--created-at", help="timestamp recorded in reports (default: now, UTC)")
    p.add_argument("--quiet", action="store_true", help="do not echo JSON to stdout")


def _add_grid(p: argparse.ArgumentParser) -> None:
    p.add_argument("--grid-extent", type=float, default=None, help="half-width of the x grid (default 6 sqrt(t_max))")
    p.add_argument("--grid-count", type=int, default=41, help="points per axis")
    p.add_argument("--grid-tmin", type=float, default=0.01)
    p.add_argument("--grid-tmax", type=float, default=10.0)
    p.add_argument("--grid-tcount", type=int, default=13)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fracheat", description="Numerics for the fully fractional heat operator.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="region and existence verdicts for (n, p, lambda, alpha)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=float, default=1.0)
    p.add_argument("--lambda", dest="lam", type=float, required=True)
    p.add_argument("--alpha", type=float, required=True)
    _add_common(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("phase-diagram", help="raster of the (lambda, alpha) plane and its boundary curves")
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--p", type=float, default=1.0)
    p.add_argument("--lambda-max", type=float, default=4.0)
    p.add_argument("--alpha-max", type=float, default=3.0)
    p.add_argument("--resolution", type=int, default=64)
    p.add_argument("--out-dir", help="write raster.csv, curve_lower.csv and curve_upper.csv here")
    _add_common(p)
    p.set_defaults(func=cmd_phase_diagram)

    p = sub.add_parser("verify", help="run a verification and write its report")
    p.add_argument("subkind", choices=["super-lambda1", "super-supercritical", "approx", "identities", "xp"])
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--p", type=float, default=1.0)
    p.add_argument("--lambda", dest="lam", type=float, default=3.0)
    p.add_argument("--alpha", type=float, default=0.25)
    p.add_argument("--t-shift", type=float, default=1.0, help="time shift T of super-solutions")
    p.add_argument("--rate", type=float, default=1.0, help="exponential rate a of the lambda = 1 solution")
    p.add_argument("--amplitude-scale", type=float, default=1.0, help="multiply the sharp amplitude (negative control)")
    p.add_argument("--tol", type=float, default=None, help="acceptance tolerance")
    p.add_argument("--which", choices=["all", *IDENTITIES], default="all")
    p.add_argument("--t-cut", type=float, default=1.0)
    p.add_argument("--samples-max", type=float, default=8.0)
    p.add_argument("--samples-step", type=float, default=0.25)
    p.add_argument("--samples-tail", type=float, default=12.0)
    _add_grid(p)
    _add_common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("constants", help="explicit and numerically derived constants")
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--lambda", dest="lam", type=float, required=True)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--c-resolution", type=int, default=41, help="grid size of the ball-mass search")
    _add_common(p)
    p.set_defaults(func=cmd_constants)

    p = sub.add_parser("profile", help="CSV of the self-similar profiles, or of the envelope when lambda < 1")
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--lambda", dest="lam", type=float, required=True)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--z-max", type=float, default=6.0)
    p.add_argument("--t-max", type=float, default=4.0)
    p.add_argument("--count", type=int, default=61)
    _add_common(p)
    p.set_defaults(func=cmd_profile)

    p = sub.add_parser("potential", help="point evaluation of J_alpha f")
    p.add_argument("--source", choices=["lambda1", "supercritical", "selfsimilar"], required=True)
    p.add_argument("--lambda", dest="lam", type=float, default=3.0)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--x", type=_floats, required=True, help="comma-separated coordinates")
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--t-shift", type=float, default=1.0)
    p.add_argument("--rate", type=float, default=1.0)
    _add_common(p)
    p.set_defaults(func=cmd_potential)

    p = sub.add_parser("kernel", help="point evaluation of Phi_alpha")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--x", type=_floats, required=True, help="comma-separated coordinates")
    p.add_argument("--t", type=float, required=True)
    _add_common(p)
    p.set_defaults(func=cmd_kernel)
    return parser


def _set_default_tol(args: argparse.Namespace) -> None:
    if getattr(args, "command", None) == "verify" and args.subkind.startswith("super") and args.tol is None:
        args.tol = 1e-9


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if isinstance(exc.code, int) else EXIT_USAGE
    _set_default_tol(args)
    try:
        return args.func(args)
    except (DomainError, UsageError) as exc:
        print(f"fracheat: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NonConvergenceError as exc:
        print(f"fracheat: numerical failure: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except ReportFormatError as exc:
        # e.g. a point value that overflows double precision
        print(f"fracheat: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"fracheat: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
