from __future__ import annotations

import dataclasses

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sharpfront import (
    ConfigError,
    GridConfig,
    InsufficientDataError,
    ProblemSpec,
    error_vs_exact,
    front_speed,
    perturbation_decay,
    run,
    scheme_comparison,
    sharp_wave_ic,
)
from sharpfront.scheme import exact_sharp_solution


@pytest.fixture
def problem(fisher):
    return ProblemSpec(kinetics=fisher, kappa=1.0, r=0.0)


COARSE = dict(x_min=-10.0, x_max=25.0, dx=0.1, cfl=0.9)


class TestFrontSpeed:
    def test_exact_linear_trajectory(self):
        t = np.linspace(0.0, 10.0, 101)
        est = front_speed(t, 5.0 - t)
        assert est.speed == pytest.approx(1.0, abs=1e-14)
        assert est.rms_residual < 1e-12
        assert est.window == (5.0, 10.0)

    @given(
        speed=st.floats(-2.0, 2.0),
        intercept=st.floats(-5.0, 5.0),
    )
    @settings(max_examples=40, deadline=None)
    def test_recovers_synthetic_lines(self, speed, intercept):
        t = np.linspace(0.0, 8.0, 64)
        est = front_speed(t, intercept - speed * t)
        assert est.speed == pytest.approx(speed, abs=1e-10)
        assert est.intercept == pytest.approx(intercept, abs=1e-10)

    def test_window_override(self):
        t = np.linspace(0.0, 10.0, 101)
        est = front_speed(t, 5.0 - t, window=(2.0, 4.0))
        assert est.window == (2.0, 4.0)
        assert est.n_points == 21

    def test_too_few_points(self):
        t = np.linspace(0.0, 1.0, 8)
        with pytest.raises(InsufficientDataError):
            front_speed(t, -t)

    def test_window_outside_range(self):
        t = np.linspace(0.0, 1.0, 50)
        with pytest.raises(ConfigError):
            front_speed(t, -t, window=(0.5, 2.0))


class TestSpeedGridConsistency:
    def test_halving_dx_moves_the_estimate_under_half_percent(self, problem):
        speeds = {}
        for dx, cfl in ((0.1, 0.9), (0.05, 0.45)):
            grid = GridConfig(x_min=-15.0, x_max=60.0, dx=dx, cfl=cfl, T=10.0)
            series = run(problem, grid, sharp_wave_ic())
            speeds[dx] = front_speed(series.edge_t, series.edge_x).speed
        rel = abs(speeds[0.1] - speeds[0.05]) / speeds[0.05]
        assert rel < 0.005


class TestErrorVsExact:
    def test_time_zero_is_sampling_identity(self, problem):
        grid = GridConfig(**COARSE, T=1.0)
        series = run(problem, grid, sharp_wave_ic(), snapshot_times=(0.0,))
        linf, l2 = error_vs_exact(series, 0.0)
        assert linf == 0.0 and l2 == 0.0

    def test_exact_solution_fed_back(self, problem):
        grid = GridConfig(**COARSE, T=1.0)
        series = run(problem, grid, sharp_wave_ic(), snapshot_times=(1.0,))
        fake = dataclasses.replace(series)
        fake.snapshots = [exact_sharp_solution(1.0, series.x)]
        linf, l2 = error_vs_exact(fake, 1.0)
        assert linf <= 1e-12 and l2 <= 1e-12

    def test_delayed_configuration_rejected(self, fisher):
        problem = ProblemSpec(kinetics=fisher, kappa=1.0, r=0.1)
        grid = GridConfig(**COARSE, T=1.0)
        series = run(problem, grid, sharp_wave_ic(), snapshot_times=(1.0,))
        with pytest.raises(ConfigError, match="exact solution"):
            error_vs_exact(series, 1.0)

    def test_missing_snapshot_rejected(self, problem):
        grid = GridConfig(**COARSE, T=1.0)
        series = run(problem, grid, sharp_wave_ic(), snapshot_times=(1.0,))
        with pytest.raises(ConfigError, match="no snapshot"):
            error_vs_exact(series, 0.5)


class TestSchemeComparison:
    def test_sharp_edge_beats_classical(self, problem):
        grid = GridConfig(**COARSE, T=5.0)
        report = scheme_comparison(problem, grid, time=5.0)
        assert report.sharp_edge_wins
        assert report.sharp_edge_error < report.classical_edge_error
        assert report.sharp_linf < report.classical_linf

    def test_deterministic(self, problem):
        grid = GridConfig(**COARSE, T=5.0)
        a = scheme_comparison(problem, grid, time=5.0)
        b = scheme_comparison(problem, grid, time=5.0)
        assert a == b  # bitwise-identical report

    def test_requires_non_delayed_config(self, fisher):
        problem = ProblemSpec(kinetics=fisher, kappa=1.0, r=0.1)
        with pytest.raises(ConfigError):
            scheme_comparison(problem, GridConfig(**COARSE, T=5.0))


class TestPerturbationDecay:
    def test_zero_amplitude_gives_zero_deviation(self, problem):
        grid = GridConfig(**COARSE, T=2.0)
        report, base, pert = perturbation_decay(problem, grid, amplitude=0.0)
        assert np.all(report.deviation == 0.0)

    def test_initial_deviation_equals_amplitude(self, fisher):
        problem = ProblemSpec(kinetics=fisher, kappa=1.0, r=0.0)
        grid = GridConfig(x_min=-15.0, x_max=60.0, dx=0.05, T=2.0)
        report, _, _ = perturbation_decay(problem, grid, amplitude=0.2)
        assert report.deviation[0] == pytest.approx(0.2, abs=1e-12)
        assert report.deviation[-1] < 0.2
