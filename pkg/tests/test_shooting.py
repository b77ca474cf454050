from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from sharpfront import (
    Classification,
    ConfigError,
    WaveProfile,
    asymptotic_seed,
    classify,
    critical_speed,
    delayed_phase_map,
    integrate_profile,
    phase_curve,
)


class TestAsymptoticSeed:
    def test_m2_from_xi(self):
        # phi0 chosen so that xi0 lands at 0.01 for (m, c) = (2, 1)
        xi0, phi0, psi0 = asymptotic_seed(1.0, 2.0, 0.005)
        assert xi0 == pytest.approx(0.01)
        assert phi0 == 0.005
        assert psi0 == pytest.approx(0.005)

    def test_m2_c2(self):
        xi0, phi0, psi0 = asymptotic_seed(2.0, 2.0, 0.01)
        assert xi0 == pytest.approx(0.01)
        assert psi0 == pytest.approx(0.02)

    def test_m3(self, fisher):
        xi0, phi0, psi0 = asymptotic_seed(1.0, 3.0, 0.01)
        assert xi0 == pytest.approx(1.5e-4)
        assert psi0 == pytest.approx(0.01)
        # the leading-order profile satisfies the wave ODE up to the
        # reaction terms, which are O(phi0) at the seed
        res = oracles.seed_profile_residual(
            1.0, 3.0, xi0, fisher.birth, fisher.death, cr=0.0
        )
        assert res <= 2.0 * phi0

    def test_domain_errors(self):
        with pytest.raises(ConfigError):
            asymptotic_seed(-1.0, 2.0, 0.01)
        with pytest.raises(ConfigError):
            asymptotic_seed(1.0, 1.0, 0.01)
        with pytest.raises(ConfigError):
            asymptotic_seed(1.0, 2.0, 0.0)


class TestIntegrateProfile:
    def test_fast_speed_is_supercritical(self, fisher, kappa):
        prof = integrate_profile(2.0, 2.0, 0.0, fisher, kappa)
        assert prof.classification is Classification.SUPERCRITICAL
        assert prof.phi[-1] >= kappa
        assert prof.psi[-1] > 0

    def test_slow_speed_is_subcritical(self, fisher, kappa):
        prof = integrate_profile(0.5, 2.0, 0.0, fisher, kappa)
        assert prof.classification is Classification.SUBCRITICAL
        assert prof.phi[-1] < kappa
        assert prof.xi_peak is not None

    def test_critical_speed_tracks_explicit_wave(self, fisher, kappa):
        prof = integrate_profile(1.0, 2.0, 0.0, fisher, kappa, xi_max=30.0)
        assert prof.classification in (
            Classification.UNDECIDED,
            Classification.SUPERCRITICAL,
        )
        assert abs(prof.phi[-1] - kappa) <= 1e-2
        body = prof.phi <= 0.999
        err = np.max(np.abs(prof.phi[body] - oracles.exact_wave_profile(prof.xi[body])))
        assert err <= 1e-4

    def test_short_horizon_is_undecided(self, fisher, kappa):
        prof = integrate_profile(1.0, 2.0, 0.0, fisher, kappa, xi_max=5.0)
        assert prof.classification is Classification.UNDECIDED

    def test_profile_increasing_while_psi_positive(self, fisher, kappa):
        prof = integrate_profile(0.9, 2.0, 0.1, fisher, kappa)
        pos = prof.psi > 0
        assert np.all(np.diff(prof.phi[pos]) > 0)

    def test_seed_matches_asymptotics_within_one_percent(self, fisher, kappa):
        prof = integrate_profile(0.8, 2.0, 0.1, fisher, kappa)
        xi0, phi0, psi0 = asymptotic_seed(0.8, 2.0, prof.phi0)
        assert prof.xi[0] == pytest.approx(xi0)
        assert prof.phi[0] == pytest.approx(phi0, rel=1e-2)
        assert prof.psi[0] == pytest.approx(psi0, rel=1e-2)

    def test_delayed_output_is_dense(self, fisher, kappa):
        prof = integrate_profile(0.9, 2.0, 0.1, fisher, kappa)
        assert np.max(np.diff(prof.xi)) <= 1e-3 * 0.9 * 0.1 + 1e-12

    def test_dichotomy_no_recovery_after_peak(self, fisher, kappa):
        prof = integrate_profile(
            0.5, 2.0, 0.1, fisher, kappa, continue_after_peak=True
        )
        assert prof.classification is Classification.SUBCRITICAL
        past_peak = prof.xi >= prof.xi_peak
        assert np.all(prof.psi[past_peak] <= 1e-12)
        assert prof.phi[-1] <= 2.0 * prof.phi0  # rode the decline back down

    def test_domain_errors(self, fisher, kappa):
        with pytest.raises(ConfigError):
            integrate_profile(0.0, 2.0, 0.0, fisher, kappa)
        with pytest.raises(ConfigError):
            integrate_profile(1.0, 2.0, -0.1, fisher, kappa)


class TestClassify:
    @staticmethod
    def _profile(phi, psi):
        phi = np.asarray(phi, dtype=float)
        psi = np.asarray(psi, dtype=float)
        return WaveProfile(
            c=1.0,
            m=2.0,
            r=0.0,
            xi=np.arange(len(phi), dtype=float),
            phi=phi,
            psi=psi,
            classification=Classification.UNDECIDED,
            xi_peak=None,
            xi0=0.0,
            phi0=float(phi[0]),
        )

    def test_crossing_kappa_with_positive_slope(self):
        prof = self._profile([0.5, 0.9, 1.0 + 1e-6], [0.2, 0.1, 0.05])
        assert classify(prof, 1.0) is Classification.SUPERCRITICAL

    def test_stalling_below_kappa(self):
        prof = self._profile([0.5, 0.6, 0.7], [0.2, 0.1, 0.0])
        assert classify(prof, 1.0) is Classification.SUBCRITICAL

    def test_running_out_of_domain(self):
        prof = self._profile([0.5, 0.9, 0.99], [0.2, 0.1, 0.05])
        assert classify(prof, 1.0) is Classification.UNDECIDED

    def test_matches_integrator_labels(self, fisher, kappa):
        for c in (0.5, 2.0):
            prof = integrate_profile(c, 2.0, 0.0, fisher, kappa)
            assert classify(prof, kappa) is prof.classification


class TestCriticalSpeed:
    def test_non_delayed_fisher(self, fisher, kappa):
        bracket = critical_speed(2.0, 0.0, fisher, kappa, tol=1e-4)
        assert bracket.resolved
        assert bracket.width <= 1e-4
        assert bracket.midpoint == pytest.approx(1.0, abs=1e-3)

    def test_bracket_endpoints_keep_their_classes(self, fisher, kappa):
        bracket = critical_speed(2.0, 0.1, fisher, kappa, tol=1e-3)
        lo = integrate_profile(bracket.c_lo, 2.0, 0.1, fisher, kappa, xi_max=200.0)
        hi = integrate_profile(bracket.c_hi, 2.0, 0.1, fisher, kappa, xi_max=200.0)
        assert lo.classification is Classification.SUBCRITICAL
        assert hi.classification is Classification.SUPERCRITICAL

    def test_bisection_iterates_shrink_and_stay_ordered(self, fisher, kappa):
        bracket = critical_speed(2.0, 0.0, fisher, kappa, tol=1e-3)
        widths = [it.c_hi - it.c_lo for it in bracket.iterates]
        assert all(w2 <= w1 * 0.5 + 1e-15 for w1, w2 in zip(widths, widths[1:]))
        for it in bracket.iterates:
            assert it.c_lo < it.c_mid < it.c_hi
            assert it.classification_mid in (
                Classification.SUBCRITICAL,
                Classification.SUPERCRITICAL,
            )

    def test_seed_size_does_not_move_the_answer(self, fisher, kappa):
        a = critical_speed(2.0, 0.1, fisher, kappa, tol=1e-4, phi0=1e-6 * kappa)
        b = critical_speed(2.0, 0.1, fisher, kappa, tol=1e-4, phi0=5e-7 * kappa)
        assert abs(a.midpoint - b.midpoint) < 1e-4

    def test_fractional_exponent_gives_finite_speed(self, fisher, kappa):
        bracket = critical_speed(1.5, 0.0, fisher, kappa, tol=1e-3)
        assert bracket.resolved
        assert 0.0 < bracket.midpoint < np.inf
        lo = integrate_profile(bracket.c_lo, 1.5, 0.0, fisher, kappa, xi_max=100.0)
        hi = integrate_profile(bracket.c_hi, 1.5, 0.0, fisher, kappa, xi_max=100.0)
        assert lo.classification is Classification.SUBCRITICAL
        assert hi.classification is Classification.SUPERCRITICAL

    def test_short_horizon_is_resolved_by_doubling(self, fisher, kappa):
        bracket = critical_speed(2.0, 0.0, fisher, kappa, tol=1e-3, xi_max=5.0)
        assert bracket.resolved
        assert bracket.midpoint == pytest.approx(1.0, abs=2e-3)

    def test_capped_horizon_returns_unresolved_bracket(self, fisher, kappa):
        bracket = critical_speed(
            2.0, 0.1, fisher, kappa, tol=1e-9, xi_max=10.0, max_xi_doublings=0
        )
        assert not bracket.resolved
        assert bracket.c_lo < bracket.c_hi
        assert bracket.width < 1e-3  # widest bracket the horizon could resolve
        assert bracket.iterates[-1].classification_mid is Classification.UNDECIDED


class TestPhaseCurve:
    def test_seed_relation(self, fisher, kappa):
        prof = integrate_profile(0.7, 2.0, 0.0, fisher, kappa)
        curve = phase_curve(prof)
        assert curve.psi_tilde[0] == pytest.approx(0.7 * curve.phi_samples[0], rel=1e-2)

    def test_sharp_wave_identity(self, fisher, kappa):
        prof = integrate_profile(1.0, 2.0, 0.0, fisher, kappa, xi_max=30.0)
        curve = phase_curve(prof)
        mask = (curve.phi_samples >= 0.05) & (curve.phi_samples <= 0.95)
        ph = curve.phi_samples[mask]
        assert np.max(np.abs(curve.psi_tilde[mask] - ph * (1.0 - ph))) <= 1e-3

    def test_monotone_dependence_on_speed(self, fisher, kappa):
        fast = phase_curve(integrate_profile(1.2, 2.0, 0.1, fisher, kappa))
        slow = phase_curve(integrate_profile(0.8, 2.0, 0.1, fisher, kappa))
        lo = max(fast.phi_samples[0], slow.phi_samples[0])
        hi = min(fast.phi_samples[-1], slow.phi_samples[-1])
        grid = np.linspace(lo, hi, 257)
        v_fast = np.interp(grid, fast.phi_samples, fast.psi_tilde)
        v_slow = np.interp(grid, slow.phi_samples, slow.psi_tilde)
        assert np.all(v_fast > v_slow)

    def test_profile_monotone_dependence_on_speed(self, fisher, kappa):
        fast = integrate_profile(1.2, 2.0, 0.1, fisher, kappa)
        slow = integrate_profile(0.8, 2.0, 0.1, fisher, kappa)
        xi_f, phi_f = oracles.increasing_segment(fast)
        xi_s, phi_s = oracles.increasing_segment(slow)
        lo = max(xi_f[0], xi_s[0])
        hi = min(xi_f[-1], xi_s[-1])
        grid = np.linspace(lo, hi, 257)
        assert np.all(np.interp(grid, xi_f, phi_f) > np.interp(grid, xi_s, phi_s))

    def test_rejects_empty_segment(self):
        prof = TestClassify._profile([0.5, 0.4, 0.3], [-0.1, -0.2, -0.3])
        with pytest.raises(ConfigError):
            phase_curve(prof)

    def test_rejects_non_monotone_segment(self):
        prof = TestClassify._profile([0.5, 0.4, 0.6], [0.1, 0.2, 0.3])
        with pytest.raises(ConfigError, match="not strictly increasing"):
            phase_curve(prof)


class TestDelayedPhaseMap:
    def test_zero_delay_is_identity(self, fisher, kappa):
        prof = integrate_profile(1.0, 2.0, 0.0, fisher, kappa, xi_max=20.0)
        curve = phase_curve(prof)
        for phi in (0.1, 0.4, 0.8):
            assert delayed_phase_map(curve, 1.0, 0.0, phi) == phi

    def test_small_phi_maps_to_zero(self, fisher, kappa):
        prof = integrate_profile(0.9, 2.0, 0.1, fisher, kappa)
        curve = phase_curve(prof)
        # transit up to phi equals roughly the wave coordinate; anything
        # reached before xi = c*r has a vanishing delayed value
        assert delayed_phase_map(curve, 0.9, 0.1, 0.01) == 0.0

    def test_matches_direct_profile_lookup(self, fisher, kappa):
        c, r = 0.9, 0.1
        prof = integrate_profile(c, 2.0, r, fisher, kappa)
        curve = phase_curve(prof)
        value = delayed_phase_map(curve, c, r, 0.5)
        assert abs(value - oracles.delayed_lookup(prof, 0.5, c * r)) <= 1e-4

    def test_outside_domain_rejected(self, fisher, kappa):
        prof = integrate_profile(0.9, 2.0, 0.1, fisher, kappa)
        curve = phase_curve(prof)
        with pytest.raises(ConfigError, match="outside"):
            delayed_phase_map(curve, 0.9, 0.1, 2.0)

    @given(phi=st.floats(0.05, 0.7))
    @settings(max_examples=20, deadline=None)
    def test_map_value_is_below_its_argument(self, phi):
        curve = _CACHED["curve"]
        value = delayed_phase_map(curve, 0.9, 0.1, phi)
        assert 0.0 <= value < phi


# one shared profile for the hypothesis property above (integration is slow)
def _build_cached():
    from sharpfront import carrying_capacity, fisher_kpp

    kin = fisher_kpp()
    kap = carrying_capacity(kin).kappa
    prof = integrate_profile(0.9, 2.0, 0.1, kin, kap)
    return {"curve": phase_curve(prof)}


_CACHED = _build_cached()
