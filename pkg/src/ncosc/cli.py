"""Command-line frontend.

Subcommands: `derive` (parameter report), `audit` (randomized invariant
suite), `trajectory` (closed-form samples, optional RK4 oracle columns),
`figure1` (log-spiral trajectory tables over the standard coupling-ratio
ladder) and `figure2` (squeezed-marginal grid sequence plus metrics).

Exit codes: 0 success, 1 invariant failure, 2 invalid parameters, 3 I/O
failure.
"""

import argparse
import math
import sys

import numpy as np

from . import __version__
from .audit import random_params, run_audit
from .dynamics import integrate_at_times, sample_closed_form, spiral_samples
from .errors import DomainError, NCOscError
from .export import ExportTable, write_table
from .params import NCParams, derive, from_figure_controls, read_config
from .wigner import AxesSpec, coherent_state, evaluate_grid, evolve, marginal, squeezing_metrics

# Coupling ratios and departure points of the standard spiral portraits; the
# departure tuples use the (x, pi_x, y, pi_y) convention.
FIG1_EPS = (0.0, 0.1, 0.01, 0.001)
FIG1_STARTS = ((1.0, 0.0, 1.0, 0.0), (1.0, 1.0, 1.0, 0.0))
FIG2_K_MAX = 6

_PHYSICAL_FLAGS = ("theta", "eta", "mass", "omega", "hbar", "lam", "mu")


def departure_point(start) -> np.ndarray:
    """Reorder a (x, pi_x, y, pi_y) departure tuple into (Q1, Q2, Pi1, Pi2)."""
    x, pi_x, y, pi_y = start
    return np.array([x, y, pi_x, pi_y])


def _add_param_flags(parser):
    group = parser.add_argument_group("physical parameters")
    group.add_argument("--theta", type=float, help="position deformation (length**2)")
    group.add_argument("--eta", type=float, help="momentum deformation (momentum**2)")
    group.add_argument("--mass", type=float, help="oscillator mass (default 1)")
    group.add_argument("--omega", type=float, help="oscillator frequency (default 1)")
    group.add_argument("--hbar", type=float, help="action scale (default 1)")
    group.add_argument("--lambda", dest="lam", type=float, help="position map coefficient")
    group.add_argument("--mu", type=float, help="momentum map coefficient")
    group.add_argument("--config", help="flat `name = value` parameter file")
    alt = parser.add_argument_group("figure controls (alternative parameterization)")
    alt.add_argument("--eps-ratio", type=float, help="spiral slope gamma/big_omega")
    alt.add_argument("--big-omega", type=float, help="oscillation frequency (default 1)")


def _add_output_flags(parser):
    parser.add_argument("--format", choices=("csv", "json"), default="csv")
    parser.add_argument("--out", default=".", help="output directory")
    parser.add_argument("--seed", type=int, default=0)


def resolve_params(args):
    """Return (NCParams or None, DerivedParams, provenance dict)."""
    figure_mode = args.eps_ratio is not None or args.big_omega is not None
    physical = any(getattr(args, f) is not None for f in _PHYSICAL_FLAGS) or args.config
    if figure_mode and physical:
        raise DomainError("figure controls cannot be combined with physical parameter flags")
    if figure_mode:
        eps_ratio = args.eps_ratio if args.eps_ratio is not None else 0.0
        big_omega = args.big_omega if args.big_omega is not None else 1.0
        dparams = from_figure_controls(eps_ratio, big_omega)
        meta = {"parameterization": "figure", "eps_ratio": eps_ratio, "big_omega": big_omega}
        return None, dparams, meta
    values = {"theta": 0.0, "eta": 0.0, "mass": 1.0, "omega": 1.0, "hbar": 1.0,
              "lambda": None, "mu": None}
    if args.config:
        values.update(read_config(args.config))
    for flag, key in (("theta", "theta"), ("eta", "eta"), ("mass", "mass"),
                      ("omega", "omega"), ("hbar", "hbar"), ("lam", "lambda"), ("mu", "mu")):
        given = getattr(args, flag)
        if given is not None:
            values[key] = given
    params = NCParams(theta=values["theta"], eta=values["eta"], mass=values["mass"],
                      omega=values["omega"], hbar=values["hbar"],
                      lam=values["lambda"], mu=values["mu"])
    dparams = derive(params)
    meta = {"parameterization": "physical", "theta": params.theta, "eta": params.eta,
            "mass": params.mass, "omega": params.omega, "hbar": params.hbar,
            "lambda": params.lam, "mu": params.mu}
    return params, dparams, meta


def _base_meta(subcommand: str, param_meta: dict) -> dict:
    return {"tool": f"ncosc {__version__}", "subcommand": subcommand, **param_meta}


def cmd_derive(args) -> int:
    params, dparams, param_meta = resolve_params(args)
    report = []
    if params is not None:
        report += [("theta", params.theta), ("eta", params.eta), ("mass", params.mass),
                   ("omega", params.omega), ("hbar", params.hbar),
                   ("lambda", params.lam), ("mu", params.mu), ("lam_mu", params.lam_mu),
                   ("constraint_residual", params.constraint_residual())]
    report += [("alpha_sq", dparams.alpha_sq), ("beta_sq", dparams.beta_sq),
               ("gamma", dparams.gamma), ("big_omega", dparams.big_omega),
               ("eps_small", dparams.eps_small), ("eps_ratio", dparams.eps_ratio),
               ("period", dparams.period)]
    if params is None:
        verdict = "figure controls"
    elif params.theta == 0.0 and params.eta == 0.0:
        verdict = "commutative limit"
    else:
        verdict = "ok"
    for name, value in report:
        print(f"{name} = {value:.17g}")
    print(f"verdict = {verdict}")
    if args.out is not None:
        meta = _base_meta("derive", param_meta)
        meta["verdict"] = verdict
        table = ExportTable(tuple(name for name, _ in report),
                            np.array([[value for _, value in report]]), meta)
        print(write_table(table, args.out, "derive", args.format))
    return 0


def cmd_audit(args) -> int:
    if args.eps_ratio is not None or args.big_omega is not None:
        raise DomainError("audit checks the coordinate-map algebra and needs physical parameters")
    physical = any(getattr(args, f) is not None for f in _PHYSICAL_FLAGS) or args.config
    if physical:
        params, _, _ = resolve_params(args)
        cases = [params]
    else:
        rng = np.random.default_rng(args.seed)
        cases = [random_params(rng) for _ in range(args.cases)]
    results = run_audit(cases, seed=args.seed, oracle_cases=min(3, len(cases)))
    for result in results:
        print(result.line())
    failures = [r for r in results if not r.passed]
    if failures:
        print(f"first failing invariant: {failures[0].name}", file=sys.stderr)
        return 1
    print(f"all {len(results)} invariants pass over {len(cases)} parameter set(s)")
    return 0


def _parse_start(text: str) -> np.ndarray:
    parts = text.split(",")
    if len(parts) != 4:
        raise DomainError(f"--start needs 4 comma-separated numbers Q1,Q2,Pi1,Pi2, got {text!r}")
    try:
        return np.array([float(p) for p in parts])
    except ValueError:
        raise DomainError(f"--start is not numeric: {text!r}") from None


def cmd_trajectory(args) -> int:
    _, dparams, param_meta = resolve_params(args)
    z0 = _parse_start(args.start)
    t_end = args.t_end if args.t_end is not None else dparams.period
    if not (math.isfinite(t_end) and t_end > 0.0):
        raise DomainError(f"--t-end must be positive and finite, got {t_end}")
    if args.samples < 2:
        raise DomainError(f"--samples must be at least 2, got {args.samples}")
    times = np.linspace(0.0, t_end, args.samples)
    traj = sample_closed_form(z0, dparams, times)
    columns = ["tau", "Q1", "Q2", "Pi1", "Pi2"]
    data = [times, *traj.points.T]
    if args.oracle:
        oracle = integrate_at_times(z0, dparams, times, dparams.period / 10_000)
        columns += ["Q1_rk4", "Q2_rk4", "Pi1_rk4", "Pi2_rk4"]
        data += list(oracle.points.T)
    meta = _base_meta("trajectory", param_meta)
    meta.update(start=args.start, t_end=t_end, samples=args.samples,
                oracle=str(bool(args.oracle)).lower(), seed=args.seed)
    table = ExportTable(tuple(columns), np.column_stack(data), meta)
    print(write_table(table, args.out, "trajectory", args.format))
    return 0


def cmd_figure1(args) -> int:
    for eps in FIG1_EPS:
        dparams = from_figure_controls(eps, args.big_omega)
        for start in FIG1_STARTS:
            traj = spiral_samples(departure_point(start), dparams, args.samples)
            meta = _base_meta("figure1", {
                "eps_ratio": eps, "big_omega": args.big_omega,
                "start_x_pix_y_piy": ",".join(f"{v:g}" for v in start),
                "samples": args.samples, "seed": args.seed,
            })
            table = ExportTable(("tau", "Q1", "Q2", "Pi1", "Pi2"),
                                np.column_stack([traj.times, traj.points]), meta)
            stem = f"fig1_eps{eps:g}_start{''.join(str(int(v)) for v in start)}"
            print(write_table(table, args.out, stem, args.format))
    return 0


def cmd_figure2(args) -> int:
    if args.eps_ratio <= 0.0:
        raise DomainError("figure2 needs eps_ratio > 0: the snapshot times scale as 1/eps_ratio")
    dparams = from_figure_controls(args.eps_ratio, args.big_omega)
    state0 = coherent_state(departure_point(FIG1_STARTS[0]), args.hbar)
    metrics_rows = []
    for k in range(FIG2_K_MAX + 1):
        tau = k * math.pi / (32.0 * args.eps_ratio * args.big_omega)
        state = evolve(state0, dparams, tau)
        reduced = marginal(state, 1)
        axes = AxesSpec.auto(reduced, count=args.grid)
        grid = evaluate_grid(state, 1, axes=axes, mode="figure")
        metrics = squeezing_metrics(reduced, args.hbar)
        metrics_rows.append([k, tau, reduced.cov[0, 0], reduced.cov[1, 1],
                             metrics.squeeze_r, metrics.purity])
        meta = _base_meta("figure2", {
            "eps_ratio": args.eps_ratio, "big_omega": args.big_omega, "hbar": args.hbar,
            "k": k, "tau": tau, "subsystem": 1, "normalization": "figure",
            "peak_physical": grid.peak,
            "q_min": axes.q_min, "q_max": axes.q_max, "q_count": axes.q_count,
            "p_min": axes.p_min, "p_max": axes.p_max, "p_count": axes.p_count,
            "seed": args.seed,
        })
        rows = np.column_stack([
            np.repeat(grid.q_axis, grid.p_axis.size),
            np.tile(grid.p_axis, grid.q_axis.size),
            grid.values.ravel(),
        ])
        print(write_table(ExportTable(("Q1", "Pi1", "W"), rows, meta), args.out,
                          f"fig2_grid_k{k}", args.format))
    meta = _base_meta("figure2", {
        "eps_ratio": args.eps_ratio, "big_omega": args.big_omega, "hbar": args.hbar,
        "grid": args.grid, "seed": args.seed,
    })
    table = ExportTable(("k", "tau", "var_Q1", "var_Pi1", "r", "purity"),
                        np.array(metrics_rows), meta)
    print(write_table(table, args.out, "fig2_metrics", args.format))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ncosc",
        description="Deformed two-oscillator phase-space dynamics: parameter "
                    "derivation, invariant audits, trajectory and Wigner exports.",
    )
    parser.add_argument("--version", action="version", version=f"ncosc {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("derive", help="derive effective constants and validity verdicts")
    _add_param_flags(p)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", default=None, help="also export the report to this directory")
    p.set_defaults(func=cmd_derive)

    p = sub.add_parser("audit", help="run the randomized invariant suite")
    _add_param_flags(p)
    p.add_argument("--cases", type=int, default=100, help="random parameter sets (default 100)")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_audit)

    p = sub.add_parser("trajectory",
                       help="export closed-form samples, optionally with RK4 oracle columns")
    _add_param_flags(p)
    _add_output_flags(p)
    p.add_argument("--start", default="1,1,0,0", help="initial point Q1,Q2,Pi1,Pi2")
    p.add_argument("--t-end", type=float, default=None, help="end time (default one period)")
    p.add_argument("--samples", type=int, default=1024)
    p.add_argument("--oracle", action="store_true", help="add side-by-side RK4 columns")
    p.set_defaults(func=cmd_trajectory)

    p = sub.add_parser("figure1", help="export the spiral trajectory tables")
    _add_output_flags(p)
    p.add_argument("--big-omega", type=float, default=1.0)
    p.add_argument("--samples", type=int, default=1024)
    p.set_defaults(func=cmd_figure1)

    p = sub.add_parser("figure2", help="export the squeezed-marginal grid sequence")
    _add_output_flags(p)
    p.add_argument("--eps-ratio", type=float, default=0.1)
    p.add_argument("--big-omega", type=float, default=1.0)
    p.add_argument("--hbar", type=float, default=1.0)
    p.add_argument("--grid", type=int, default=256, help="points per grid axis")
    p.set_defaults(func=cmd_figure2)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except NCOscError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
