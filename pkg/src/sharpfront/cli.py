"""Command-line interface.

Commands: simulate, wavespeed, frontspeed, sweep, perturb, compare,
validate, profile, homog.  Exit codes: 0 ok, 1 assertion/comparison
failure, 2 usage/config error, 3 numerical failure.  All outputs are CSV
files under --out; identical configurations produce byte-identical files.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import analysis, kinetics, scheme, shooting
from .config import RunConfig, load_config
from .csvio import read_csv_columns, write_csv
from .errors import (
    ConfigError,
    EdgeLeftDomainError,
    InsufficientDataError,
    NoEdgeError,
    NumericalError,
    SharpFrontError,
)

EXIT_OK = 0
EXIT_COMPARISON = 1
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3


def _say(args: argparse.Namespace, message: str) -> None:
    if not args.quiet:
        print(message)


def build_kinetics(config: RunConfig) -> tuple[kinetics.Kinetics, float]:
    try:
        kin = kinetics.make_kinetics(config.kinetics.name, **config.kinetics.params)
    except TypeError as exc:
        raise ConfigError(f"bad kinetics parameters: {exc}") from exc
    kappa = kinetics.carrying_capacity(kin).kappa
    return kin, kappa


def build_pde_setup(
    config: RunConfig, r: float | None = None
) -> tuple[scheme.ProblemSpec, scheme.GridConfig]:
    kin, kappa = build_kinetics(config)
    pde = config.pde
    problem = scheme.ProblemSpec(
        kinetics=kin, kappa=kappa, r=pde.r if r is None else r, m=pde.m
    )
    grid = scheme.GridConfig(
        x_min=pde.x_min,
        x_max=pde.x_max,
        dx=pde.dx,
        T=pde.T,
        cfl=pde.cfl,
        dt=pde.dt,
    )
    return problem, grid


def _write_snapshots(
    out: Path, series: scheme.SnapshotSeries, suffix: str = ""
) -> None:
    for t, snap in zip(series.times, series.snapshots):
        write_csv(
            out / f"snap_t{t:g}{suffix}.csv",
            ["x", "u"],
            zip(series.x, snap),
        )


def _write_trajectory(out: Path, series: scheme.SnapshotSeries, suffix: str = "") -> Path:
    rows = (
        (t, xh, c1, c2, int(k))
        for t, xh, c1, c2, k in zip(
            series.edge_t, series.edge_x, series.edge_c1, series.edge_c2, series.edge_k
        )
        if np.isfinite(xh)
    )
    return write_csv(
        out / f"edge_trajectory{suffix}.csv", ["t", "x_hat", "c1", "c2", "k"], rows
    )


def cmd_simulate(args: argparse.Namespace, config: RunConfig, out: Path) -> int:
    problem, grid = build_pde_setup(config)
    series = scheme.run(
        problem,
        grid,
        scheme.sharp_wave_ic(),
        snapshot_times=config.pde.snapshot_times,
        scheme=config.pde.scheme,
    )
    suffix = "_classical" if config.pde.scheme == "classical" else ""
    _write_snapshots(out, series, suffix)
    _write_trajectory(out, series, suffix)
    _say(
        args,
        f"final front position x_hat({series.edge_t[-1]:g}) = {series.final_front:.6f} "
        f"after {len(series.edge_t) - 1} steps (dt = {series.dt:.6g})",
    )
    return EXIT_OK


def cmd_wavespeed(args: argparse.Namespace, config: RunConfig, out: Path) -> int:
    kin, kappa = build_kinetics(config)
    sh = config.shooting
    bracket = shooting.critical_speed(
        sh.m, sh.r, kin, kappa, tol=sh.tol, xi_max=sh.xi_max, phi0=sh.phi0
    )
    write_csv(
        out / "bisection.csv",
        ["iter", "c_lo", "c_hi", "classification_mid"],
        (
            (it.index, it.c_lo, it.c_hi, it.classification_mid.value)
            for it in bracket.iterates
        ),
    )
    _say(
        args,
        f"c*({sh.m:g}, {sh.r:g}) = {bracket.midpoint:.6f} "
        f"(bracket width {bracket.width:.3g})",
    )
    if not bracket.resolved:
        print("warning: bracket unresolved (persistent undecided orbit)", file=sys.stderr)
        return EXIT_NUMERICAL
    return EXIT_OK


def cmd_frontspeed(args: argparse.Namespace, config: RunConfig, out: Path) -> int:
    if args.trajectory is not None:
        header, columns = read_csv_columns(args.trajectory)
        if header[:2] != ["t", "x_hat"]:
            raise ConfigError(
                f"{args.trajectory}: expected columns starting with t,x_hat, got {header}"
            )
        t = np.array([float(v) for v in columns[0]])
        x_hat = np.array([float(v) for v in columns[1]])
    else:
        problem, grid = build_pde_setup(config)
        series = scheme.run(problem, grid, scheme.sharp_wave_ic())
        t, x_hat = series.edge_t, series.edge_x
    window = None
    if config.analysis.window_start is not None and config.analysis.window_end is not None:
        window = (config.analysis.window_start, config.analysis.window_end)
    est = analysis.front_speed(t, x_hat, window)
    write_csv(
        out / "frontspeed.csv",
        ["speed", "intercept", "rms_residual", "window_start", "window_end", "n_points"],
        [(est.speed, est.intercept, est.rms_residual, *est.window, est.n_points)],
    )
    _say(
        args,
        f"front speed = {est.speed:.6f} on window [{est.window[0]:g}, {est.window[1]:g}] "
        f"(rms residual {est.rms_residual:.3g})",
    )
    return EXIT_OK


def cmd_sweep(args: argparse.Namespace, config: RunConfig, out: Path) -> int:
    r_values = config.sweep.r_values
    if not r_values:
        raise ConfigError("sweep.r_values is empty")
    rows = []
    failures: list[int] = []
    for r in r_values:
        try:
            problem, grid = build_pde_setup(config, r=r)
            series = scheme.run(problem, grid, scheme.sharp_wave_ic())
            _write_trajectory(out, series, suffix=f"_r{r:g}")
            est = analysis.front_speed(series.edge_t, series.edge_x)

            kin, kappa = build_kinetics(config)
            sh = config.shooting
            bracket = shooting.critical_speed(
                sh.m, r, kin, kappa, tol=sh.tol, xi_max=sh.xi_max, phi0=sh.phi0
            )
            write_csv(
                out / f"bisection_r{r:g}.csv",
                ["iter", "c_lo", "c_hi", "classification_mid"],
                (
                    (it.index, it.c_lo, it.c_hi, it.classification_mid.value)
                    for it in bracket.iterates
                ),
            )
            rows.append((r, est.speed, bracket.midpoint, abs(est.speed - bracket.midpoint)))
            _say(
                args,
                f"r={r:g}: speed_pde={est.speed:.4f} speed_ode={bracket.midpoint:.4f}",
            )
        except (ConfigError, NoEdgeError, InsufficientDataError) as exc:
            print(f"r={r:g} failed: {exc}", file=sys.stderr)
            failures.append(EXIT_CONFIG)
        except (NumericalError, EdgeLeftDomainError) as exc:
            print(f"r={r:g} failed: {exc}", file=sys.stderr)
            failures.append(EXIT_NUMERICAL)
    write_csv(
        out / "speed_comparison.csv",
        ["r", "speed_pde", "speed_ode", "abs_diff"],
        rows,
    )
    if failures:
        return max(failures)
    return EXIT_OK


def cmd_perturb(args: argparse.Namespace, config: RunConfig, out: Path) -> int:
    problem, grid = build_pde_setup(config)
    report, base, pert = analysis.perturbation_decay(
        problem, grid, amplitude=config.perturb.amplitude
    )
    write_csv(
        out / "perturbation_deviation.csv",
        ["t", "deviation"],
        zip(report.times, report.deviation),
    )
    _write_snapshots(out, base, suffix="_base")
    _write_snapshots(out, pert, suffix="_perturbed")
    _say(
        args,
        f"sup deviation at t={report.times[-1]:g}: {report.final_deviation:.3e} "
        f"(initial {report.deviation[0]:.3e})",
    )
    return EXIT_OK


def cmd_compare(args: argparse.Namespace, config: RunConfig, out: Path) -> int:
    problem, grid = build_pde_setup(config)
    comparison = analysis.scheme_comparison(
        problem, grid, time=config.analysis.compare_time
    )
    write_csv(
        out / "scheme_comparison.csv",
        ["scheme", "linf_error", "edge_error"],
        [
            ("sharp", comparison.sharp_linf, comparison.sharp_edge_error),
            ("classical", comparison.classical_linf, comparison.classical_edge_error),
        ],
    )
    _say(
        args,
        f"t={comparison.time:g}: sharp edge error {comparison.sharp_edge_error:.3e} "
        f"vs classical {comparison.classical_edge_error:.3e}; "
        f"L_inf {comparison.sharp_linf:.3e} vs {comparison.classical_linf:.3e}",
    )
    if not comparison.sharp_edge_wins:
        print("comparison failed: sharp edge error >= classical", file=sys.stderr)
        return EXIT_COMPARISON
    return EXIT_OK


def cmd_validate(args: argparse.Namespace, config: RunConfig, out: Path) -> int:
    kin, _ = build_kinetics(config)
    issues = kinetics.validate(kin)
    if issues:
        for issue in issues:
            print(f"violated: {issue}", file=sys.stderr)
        return EXIT_COMPARISON
    _say(args, f"kinetics {kin.name!r}: all hypothesis checks passed")
    return EXIT_OK


def cmd_profile(args: argparse.Namespace, config: RunConfig, out: Path) -> int:
    sh = config.shooting
    c = args.c if args.c is not None else sh.c
    if c is None:
        raise ConfigError("the profile command needs a speed: pass --c or set shooting.c")
    kin, kappa = build_kinetics(config)
    prof = shooting.integrate_profile(
        c, sh.m, sh.r, kin, kappa, xi_max=sh.xi_max, phi0=sh.phi0
    )
    write_csv(
        out / f"profile_c{c:g}.csv",
        ["xi", "phi", "psi"],
        zip(prof.xi, prof.phi, prof.psi),
    )
    _say(
        args,
        f"c={c:g}, m={sh.m:g}, r={sh.r:g}: {prof.classification.value} "
        f"({len(prof.xi)} samples up to xi={prof.xi[-1]:.4g})",
    )
    return EXIT_OK


def cmd_homog(args: argparse.Namespace, config: RunConfig, out: Path) -> int:
    kin, _ = build_kinetics(config)
    h = config.homog
    t, u = kinetics.homogeneous_dynamics(kin, h.r, h.U0, h.T, h.dt)
    write_csv(out / "homogeneous.csv", ["t", "U"], zip(t, u))
    _say(args, f"U({h.T:g}) = {u[-1]:.6f} from U0 = {h.U0:g} with r = {h.r:g}")
    return EXIT_OK


_COMMANDS = {
    "simulate": cmd_simulate,
    "wavespeed": cmd_wavespeed,
    "frontspeed": cmd_frontspeed,
    "sweep": cmd_sweep,
    "perturb": cmd_perturb,
    "compare": cmd_compare,
    "validate": cmd_validate,
    "profile": cmd_profile,
    "homog": cmd_homog,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="PATH", help="flat key = value config file")
    common.add_argument("--out", metavar="DIR", default="out", help="output directory")
    common.add_argument(
        "--set",
        metavar="KEY=VALUE",
        action="append",
        dest="overrides",
        help="override a config key (repeatable)",
    )
    common.add_argument("--quiet", action="store_true", help="suppress info output")
    common.add_argument(
        "--seedless",
        action="store_true",
        help="accepted for interface parity; every command is deterministic",
    )
    parser = argparse.ArgumentParser(
        prog="sharpfront",
        description="Delayed degenerate-diffusion fronts: edge-tracked PDE "
        "simulation and critical wave-speed shooting.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("simulate", parents=[common], help="edge-tracked PDE run")
    sub.add_parser("wavespeed", parents=[common], help="bisect to the critical speed")
    p_front = sub.add_parser(
        "frontspeed", parents=[common], help="least-squares front speed"
    )
    p_front.add_argument(
        "trajectory", nargs="?", default=None, help="existing edge trajectory CSV"
    )
    sub.add_parser("sweep", parents=[common], help="simulate + wavespeed over delays")
    sub.add_parser("perturb", parents=[common], help="perturbation decay experiment")
    sub.add_parser("compare", parents=[common], help="sharp vs classical baseline")
    sub.add_parser("validate", parents=[common], help="check kinetics hypotheses")
    p_prof = sub.add_parser(
        "profile", parents=[common], help="integrate one wave profile"
    )
    p_prof.add_argument("--c", type=float, default=None, help="wave speed to integrate")
    sub.add_parser("homog", parents=[common], help="homogeneous delay ODE trajectory")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = load_config(args.config, args.overrides)
        out = Path(args.out)
        return _COMMANDS[args.command](args, config, out)
    except (ConfigError, NoEdgeError, InsufficientDataError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (NumericalError, EdgeLeftDomainError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except SharpFrontError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    raise SystemExit(main())
