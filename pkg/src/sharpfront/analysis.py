"""Post-processing of simulation output: speeds, error norms, stability metrics."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, InsufficientDataError
from .scheme import (
    GridConfig,
    InitialCondition,
    ProblemSpec,
    SnapshotSeries,
    exact_sharp_solution,
    perturbed_wave_ic,
    run,
    sharp_wave_ic,
)

#: Minimum trajectory points for a meaningful speed fit.
_MIN_FIT_POINTS = 10


@dataclass(frozen=True)
class SpeedEstimate:
    """Least-squares front speed over a time window (positive = leftward)."""

    speed: float
    intercept: float
    rms_residual: float
    window: tuple[float, float]
    n_points: int


def front_speed(
    t: np.ndarray, x_hat: np.ndarray, window: tuple[float, float] | None = None
) -> SpeedEstimate:
    """Fit x_hat(t) ~ intercept - speed*t on a window (default the late half).

    The late default window [T/2, T] discards the initial-data transient.
    """
    t = np.asarray(t, dtype=float)
    x_hat = np.asarray(x_hat, dtype=float)
    if window is None:
        window = (t[-1] / 2.0, t[-1])
    w0, w1 = window
    if w0 < t[0] - 1e-12 or w1 > t[-1] + 1e-12:
        raise ConfigError(f"window {window} outside the trajectory range")
    mask = (t >= w0 - 1e-12) & (t <= w1 + 1e-12)
    n = int(mask.sum())
    if n < _MIN_FIT_POINTS:
        raise InsufficientDataError(
            f"only {n} trajectory points in window {window}; need >= {_MIN_FIT_POINTS}"
        )
    slope, intercept = np.polyfit(t[mask], x_hat[mask], 1)
    resid = x_hat[mask] - (slope * t[mask] + intercept)
    return SpeedEstimate(
        speed=float(-slope),
        intercept=float(intercept),
        rms_residual=float(np.sqrt(np.mean(resid**2))),
        window=(float(w0), float(w1)),
        n_points=n,
    )


def _has_exact_solution(series: SnapshotSeries) -> bool:
    p = series.problem
    kin = p.kinetics
    return (
        p.m == 2.0
        and p.r == 0.0
        and series.ic_name == "sharp_wave"
        and abs(float(kin.birth(0.5)) - 0.5) < 1e-12
        and abs(float(kin.death(0.5)) - 0.25) < 1e-12
        and abs(p.kappa - 1.0) < 1e-9
    )


def error_vs_exact(series: SnapshotSeries, time: float) -> tuple[float, float]:
    """(L_inf, L2) errors of a stored snapshot against the explicit sharp wave.

    Only defined for the configuration with a known exact solution:
    m=2, r=0, b-d = u-u^2, initial data (1-exp(-x/2))_+.
    """
    if not _has_exact_solution(series):
        raise ConfigError(
            "no exact solution for this configuration "
            "(need m=2, r=0, Fisher-KPP p=q=1, sharp-wave initial data)"
        )
    hits = np.nonzero(np.abs(series.times - time) < 1e-9)[0]
    if len(hits) == 0:
        raise ConfigError(f"no snapshot stored at t={time}; have {series.times}")
    u = series.snapshots[int(hits[0])]
    e = u - exact_sharp_solution(time, series.x)
    linf = float(np.max(np.abs(e)))
    l2 = float(np.sqrt(series.grid.dx * np.sum(e * e)))
    return linf, l2


@dataclass(frozen=True)
class SchemeComparison:
    """Sharp vs classical errors against the exact solution at one time."""

    time: float
    sharp_linf: float
    classical_linf: float
    sharp_edge_error: float
    classical_edge_error: float

    @property
    def sharp_edge_wins(self) -> bool:
        return self.sharp_edge_error < self.classical_edge_error


def scheme_comparison(
    problem: ProblemSpec, grid: GridConfig, time: float = 5.0
) -> SchemeComparison:
    """Run both schemes on the exact-solution configuration and compare.

    The edge error is |x_hat(time) + time| (the exact front sits at -time);
    for the classical scheme the front is the sub-grid zero crossing of the
    profile.
    """
    if problem.r != 0.0:
        raise ConfigError("scheme comparison requires the exact-solution config (r=0)")
    ic = sharp_wave_ic()
    results = {}
    for scheme in ("sharp", "classical"):
        series = run(problem, grid, ic, snapshot_times=(time,), scheme=scheme)
        linf, _ = error_vs_exact(series, time)
        idx = int(round(time / series.dt))
        edge_err = abs(series.edge_x[idx] + time)
        results[scheme] = (linf, edge_err)
    return SchemeComparison(
        time=time,
        sharp_linf=results["sharp"][0],
        classical_linf=results["classical"][0],
        sharp_edge_error=results["sharp"][1],
        classical_edge_error=results["classical"][1],
    )


@dataclass(frozen=True)
class PerturbationReport:
    """Sup-norm deviation between perturbed and unperturbed runs over time."""

    times: np.ndarray
    deviation: np.ndarray
    amplitude: float

    @property
    def final_deviation(self) -> float:
        return float(self.deviation[-1])


def perturbation_decay(
    problem: ProblemSpec,
    grid: GridConfig,
    amplitude: float = 0.2,
    sample_interval: float = 1.0,
) -> tuple[PerturbationReport, SnapshotSeries, SnapshotSeries]:
    """Run perturbed and unperturbed simulations and track their deviation.

    Returns the deviation series sampled every ``sample_interval`` plus both
    snapshot series (base first) for downstream output.
    """
    n = int(round(grid.T / sample_interval))
    sample_times = tuple(j * sample_interval for j in range(n + 1))
    base = run(problem, grid, sharp_wave_ic(), snapshot_times=sample_times)
    pert = run(problem, grid, perturbed_wave_ic(amplitude), snapshot_times=sample_times)
    deviation = np.array(
        [
            float(np.max(np.abs(up - ub)))
            for up, ub in zip(pert.snapshots, base.snapshots)
        ]
    )
    report = PerturbationReport(
        times=np.asarray(sample_times), deviation=deviation, amplitude=amplitude
    )
    return report, base, pert
