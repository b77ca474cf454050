"""Shooting on the delayed degenerate traveling-wave ODE.

A wave profile phi(xi) moving left at speed c > 0 satisfies

    c * phi' = (phi**m)'' - d(phi) + b(phi(xi - c*r)),   phi(xi) = 0 for xi <= 0,

with the edge behavior phi(xi) ~ ((m-1)*c*xi/m)**(1/(m-1)) as xi -> 0+.
Integrating the first-order system in (phi, psi) with psi = (phi**m)' from a
small seed value classifies each speed: the orbit either climbs through the
positive equilibrium kappa with psi > 0 (supercritical) or stalls with
psi <= 0 below kappa (subcritical).  Bisecting on that dichotomy yields the
critical speed; the delayed argument is handled by the method of steps with
a dense interpolated history.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp
from scipy.interpolate import PchipInterpolator

from .errors import ConfigError, NumericalError
from .kinetics import Kinetics

#: Relative tolerance of the embedded 4th/5th-order pair.
RTOL = 1e-9
ATOL = 1e-12

#: Extra history samples (in output steps) kept left of each segment window.
_HISTORY_MARGIN = 5


class Classification(enum.Enum):
    SUPERCRITICAL = "supercritical"
    SUBCRITICAL = "subcritical"
    UNDECIDED = "undecided"


@dataclass(frozen=True)
class WaveProfile:
    """A sampled local wave-ODE solution with its phase variable.

    ``phi`` climbs from the seed value while ``psi = (phi**m)' > 0``; for
    subcritical speeds ``xi_peak`` records where psi first hit zero.
    """

    c: float
    m: float
    r: float
    xi: np.ndarray
    phi: np.ndarray
    psi: np.ndarray
    classification: Classification
    xi_peak: float | None
    xi0: float
    phi0: float


@dataclass(frozen=True)
class PhaseCurve:
    """psi reparameterized by phi on the strictly increasing profile segment.

    ``transit`` is the cumulative integral of m*s**(m-1)/psi_tilde(s) from
    s = 0, built by trapezoidal quadrature plus the analytic seed offset; it
    measures the wave-coordinate distance needed to climb to each phi.
    """

    phi_samples: np.ndarray
    psi_tilde: np.ndarray
    m: float
    c: float
    r: float
    seed_offset: float
    transit: np.ndarray


@dataclass(frozen=True)
class BisectionIterate:
    index: int
    c_lo: float
    c_hi: float
    c_mid: float
    classification_mid: Classification


@dataclass(frozen=True)
class SpeedBracket:
    """A bisection bracket: c_lo subcritical, c_hi supercritical."""

    c_lo: float
    c_hi: float
    resolved: bool
    iterates: tuple[BisectionIterate, ...] = ()

    @property
    def width(self) -> float:
        return self.c_hi - self.c_lo

    @property
    def midpoint(self) -> float:
        return 0.5 * (self.c_lo + self.c_hi)


def asymptotic_seed(c: float, m: float, phi0: float) -> tuple[float, float, float]:
    """Seed state on the leading-order edge profile.

    Inverting phi = ((m-1)*c*xi/m)**(1/(m-1)) at a small phi0 gives
    xi0 = m*phi0**(m-1) / ((m-1)*c); the matching phase value is
    psi0 = c*phi0 exactly at leading order.
    """
    if c <= 0:
        raise ConfigError(f"wave speed must be positive, got c={c}")
    if m <= 1:
        raise ConfigError(f"diffusion exponent must exceed 1, got m={m}")
    if phi0 <= 0:
        raise ConfigError(f"seed value must be positive, got phi0={phi0}")
    xi0 = m * phi0 ** (m - 1.0) / ((m - 1.0) * c)
    return xi0, phi0, c * phi0


def _seed_phi(s: float, c: float, m: float) -> float:
    """Leading-order edge profile, valid for 0 < s <= xi0."""
    if s <= 0:
        return 0.0
    return ((m - 1.0) * c * s / m) ** (1.0 / (m - 1.0))


def integrate_profile(
    c: float,
    m: float,
    r: float,
    kin: Kinetics,
    kappa: float,
    xi_max: float = 50.0,
    phi0: float | None = None,
    out_step: float | None = None,
    continue_after_peak: bool = False,
    rtol: float = RTOL,
) -> WaveProfile:
    """Integrate the wave ODE from the singular edge and classify the speed.

    The delay is handled by the method of steps: on each segment of length
    c*r the delayed argument phi(xi - c*r) is read from the already-computed
    history (monotone cubic interpolation of dense samples, the analytic
    leading-order profile below the seed, exact zero for xi <= c*r).

    Integration stops at phi >= kappa (supercritical), at psi <= 0 with
    phi < kappa (subcritical), or at xi_max (undecided).  Subcritical runs
    optionally continue down the decreasing branch until phi returns to the
    seed scale (``continue_after_peak``), which leaves the classification
    unchanged.
    """
    if kappa <= 0:
        raise ConfigError(f"kappa must be positive, got {kappa}")
    if r < 0:
        raise ConfigError(f"delay must be non-negative, got r={r}")
    if phi0 is None:
        phi0 = 1e-6 * kappa
    if not phi0 < kappa:
        raise ConfigError(f"seed phi0={phi0} must be below kappa={kappa}")
    cr = c * r
    xi0, _, psi0 = asymptotic_seed(c, m, phi0)
    if xi0 >= xi_max:
        raise ConfigError(f"xi_max={xi_max} does not exceed the seed position {xi0}")
    if out_step is None:
        out_step = 1e-3 * cr if r > 0 else 1e-3
    # Bound total sample count on very long horizons.
    out_step = max(out_step, xi_max / 4.0e6)

    birth, death = kin.birth, kin.death
    m1 = m - 1.0

    def rhs_factory(hist):
        if r == 0:
            def rhs(xi, y):
                phi, psi = y
                dphi = psi / (m * max(phi, 1e-300) ** m1)
                return (dphi, c * dphi + death(phi) - birth(phi))
        else:
            def rhs(xi, y):
                phi, psi = y
                dphi = psi / (m * max(phi, 1e-300) ** m1)
                return (dphi, c * dphi + death(phi) - birth(hist(xi - cr)))
        return rhs

    def ev_kappa(xi, y):
        return y[0] - kappa

    ev_kappa.terminal = True
    ev_kappa.direction = 1.0

    def ev_psi(xi, y):
        return y[1]

    ev_psi.terminal = True
    ev_psi.direction = -1.0

    def ev_floor(xi, y):
        return y[0] - phi0

    ev_floor.terminal = True
    ev_floor.direction = -1.0

    # Per-segment sample chunks (xi strictly increasing across chunks).
    chunks_xi: list[np.ndarray] = [np.array([xi0])]
    chunks_phi: list[np.ndarray] = [np.array([phi0])]
    chunks_psi: list[np.ndarray] = [np.array([psi0])]

    def make_history(seg_start: float):
        """History lookup phi(s) for s <= seg_start."""
        if r == 0:
            return None
        lo = seg_start - cr - _HISTORY_MARGIN * out_step
        use_xi: list[np.ndarray] = []
        use_phi: list[np.ndarray] = []
        for cx, cp in zip(reversed(chunks_xi), reversed(chunks_phi)):
            use_xi.append(cx)
            use_phi.append(cp)
            if cx[0] <= lo:
                break
        xs = np.concatenate(list(reversed(use_xi)))
        ps = np.concatenate(list(reversed(use_phi)))
        interp = PchipInterpolator(xs, ps, extrapolate=False) if len(xs) >= 2 else None
        x_lo, x_hi = xs[0], xs[-1]

        def hist(s: float) -> float:
            if s <= 0.0:
                return 0.0
            if s <= xi0:
                return _seed_phi(s, c, m)
            if interp is None:
                return _seed_phi(min(s, xi0), c, m)
            return float(interp(min(max(s, x_lo), x_hi)))

        return hist

    def append_samples(t: np.ndarray, y: np.ndarray) -> None:
        if len(t) == 0:
            return
        if t[0] <= chunks_xi[-1][-1]:
            t, y = t[1:], y[:, 1:]
        if len(t) == 0:
            return
        chunks_xi.append(np.asarray(t, dtype=float))
        chunks_phi.append(np.asarray(y[0], dtype=float))
        chunks_psi.append(np.asarray(y[1], dtype=float))

    classification = Classification.UNDECIDED
    xi_peak: float | None = None
    y = np.array([phi0, psi0])
    seg_start = xi0
    descending = False

    while seg_start < xi_max - 1e-12:
        if r > 0:
            n_bound = math.floor(seg_start / cr + 1e-12) + 1
            seg_end = min(n_bound * cr, xi_max)
        else:
            seg_end = xi_max
        n_eval = max(int(math.ceil((seg_end - seg_start) / out_step)), 1)
        grid = np.linspace(seg_start, seg_end, n_eval + 1)
        hist = make_history(seg_start)
        events = (ev_floor,) if descending else (ev_kappa, ev_psi)
        sol = solve_ivp(
            rhs_factory(hist),
            (seg_start, seg_end),
            y,
            method="RK45",
            rtol=rtol,
            atol=ATOL,
            t_eval=grid,
            events=events,
        )
        if sol.status == -1:
            raise NumericalError(
                f"wave ODE integration failed at c={c}, m={m}, r={r}: {sol.message}"
            )
        append_samples(sol.t, sol.y)
        if sol.status == 1:
            hit = [
                (te[0], i)
                for i, te in enumerate(sol.t_events)
                if len(te) > 0
            ]
            t_hit, which = min(hit)
            y_hit = sol.y_events[which][0]
            append_samples(np.array([t_hit]), y_hit.reshape(2, 1))
            if descending:
                break
            if which == 0:
                classification = Classification.SUPERCRITICAL
                break
            classification = Classification.SUBCRITICAL
            xi_peak = float(t_hit)
            if not continue_after_peak:
                break
            descending = True
            y = y_hit
            seg_start = t_hit
            continue
        y = sol.y[:, -1]
        seg_start = seg_end

    xi = np.concatenate(chunks_xi)
    phi = np.concatenate(chunks_phi)
    psi = np.concatenate(chunks_psi)
    return WaveProfile(
        c=c,
        m=m,
        r=r,
        xi=xi,
        phi=phi,
        psi=psi,
        classification=classification,
        xi_peak=xi_peak,
        xi0=xi0,
        phi0=phi0,
    )


def classify(profile: WaveProfile, kappa: float) -> Classification:
    """Map the stopping condition of a profile to the three-way dichotomy."""
    reached = (profile.phi >= kappa) & (profile.psi > 0)
    if np.any(reached):
        return Classification.SUPERCRITICAL
    stalled = (profile.psi <= 0) & (profile.phi < kappa)
    if np.any(stalled):
        return Classification.SUBCRITICAL
    return Classification.UNDECIDED


def critical_speed(
    m: float,
    r: float,
    kin: Kinetics,
    kappa: float,
    tol: float = 1e-4,
    xi_max: float = 50.0,
    phi0: float | None = None,
    max_xi_doublings: int = 6,
    max_bracket_steps: int = 20,
) -> SpeedBracket:
    """Bisect to the critical wave speed on the shooting dichotomy.

    An initial bracket is found by geometric doubling/halving from c = 1;
    an undecided classification doubles the horizon (up to
    ``2**max_xi_doublings * xi_max``) before bisection proceeds.  If the
    horizon cap is reached with a persistently undecided midpoint, the
    widest resolved bracket is returned with ``resolved=False``.
    """
    if tol <= 0:
        raise ConfigError("tol must be positive")
    xi_cap = xi_max * 2.0**max_xi_doublings
    horizon = xi_max

    def classify_speed(c: float) -> Classification:
        nonlocal horizon
        while True:
            prof = integrate_profile(
                c, m, r, kin, kappa, xi_max=horizon, phi0=phi0
            )
            if prof.classification is not Classification.UNDECIDED:
                return prof.classification
            if horizon >= xi_cap:
                return Classification.UNDECIDED
            horizon = min(2.0 * horizon, xi_cap)

    c = 1.0
    cls = classify_speed(c)
    if cls is Classification.UNDECIDED:
        raise NumericalError(
            f"classification at c=1 stayed undecided up to xi={xi_cap}"
        )
    c_lo = c_hi = None
    if cls is Classification.SUBCRITICAL:
        c_lo = c
        for _ in range(max_bracket_steps):
            c *= 2.0
            cls = classify_speed(c)
            if cls is Classification.SUPERCRITICAL:
                c_hi = c
                break
            if cls is Classification.UNDECIDED:
                raise NumericalError(f"undecided during bracket scan at c={c}")
            c_lo = c
    else:
        c_hi = c
        for _ in range(max_bracket_steps):
            c *= 0.5
            cls = classify_speed(c)
            if cls is Classification.SUBCRITICAL:
                c_lo = c
                break
            if cls is Classification.UNDECIDED:
                raise NumericalError(f"undecided during bracket scan at c={c}")
            c_hi = c
    if c_lo is None or c_hi is None:
        raise NumericalError(
            f"no bisection bracket found within {max_bracket_steps} doublings from c=1"
        )

    iterates: list[BisectionIterate] = []
    index = 0
    while c_hi - c_lo > tol:
        c_mid = 0.5 * (c_lo + c_hi)
        cls_mid = classify_speed(c_mid)
        iterates.append(BisectionIterate(index, c_lo, c_hi, c_mid, cls_mid))
        if cls_mid is Classification.UNDECIDED:
            return SpeedBracket(c_lo, c_hi, resolved=False, iterates=tuple(iterates))
        if cls_mid is Classification.SUBCRITICAL:
            c_lo = c_mid
        else:
            c_hi = c_mid
        index += 1
    return SpeedBracket(c_lo, c_hi, resolved=True, iterates=tuple(iterates))


def phase_curve(profile: WaveProfile) -> PhaseCurve:
    """Tabulate psi as a function of phi on the strictly increasing segment."""
    psi = profile.psi
    phi = profile.phi
    neg = np.nonzero(psi <= 0)[0]
    end = int(neg[0]) if len(neg) else len(psi)
    ph = phi[:end]
    ps = psi[:end]
    if len(ph) < 2:
        raise ConfigError("profile has no usable increasing segment")
    if np.any(np.diff(ph) <= 0):
        raise ConfigError("profile segment is not strictly increasing")
    integrand = profile.m * ph ** (profile.m - 1.0) / ps
    transit = profile.xi0 + np.concatenate(
        ([0.0], np.cumsum(0.5 * (integrand[1:] + integrand[:-1]) * np.diff(ph)))
    )
    return PhaseCurve(
        phi_samples=ph.copy(),
        psi_tilde=ps.copy(),
        m=profile.m,
        c=profile.c,
        r=profile.r,
        seed_offset=profile.xi0,
        transit=transit,
    )


def _transit_at(curve: PhaseCurve, phi: float) -> float:
    """Transit value at phi, trapezoid over the partial containing cell."""
    ph, ps = curve.phi_samples, curve.psi_tilde
    j = int(np.searchsorted(ph, phi, side="right")) - 1
    if j >= len(ph) - 1:
        return float(curve.transit[-1])
    frac = (phi - ph[j]) / (ph[j + 1] - ph[j])
    psi_q = ps[j] + frac * (ps[j + 1] - ps[j])
    f_j = curve.m * ph[j] ** (curve.m - 1.0) / ps[j]
    f_q = curve.m * phi ** (curve.m - 1.0) / psi_q
    return float(curve.transit[j] + 0.5 * (f_j + f_q) * (phi - ph[j]))


def delayed_phase_map(curve: PhaseCurve, c: float, r: float, phi: float) -> float:
    """Delayed profile value phi(xi - c*r) recovered from the phase curve alone.

    Returns 0 when the cumulative integral of m*s**(m-1)/psi_tilde(s) up to
    phi does not exceed c*r; otherwise the unique theta with the integral
    from theta to phi equal to c*r, found on the tabulated cumulative
    integral.
    """
    ph = curve.phi_samples
    if not ph[0] <= phi <= ph[-1]:
        raise ConfigError(
            f"phi={phi} outside the phase-curve domain [{ph[0]}, {ph[-1]}]"
        )
    cr = c * r
    if cr == 0:
        return float(phi)
    target = _transit_at(curve, phi) - cr
    if target <= 0:
        return 0.0
    transit = curve.transit
    k = int(np.searchsorted(transit, target))
    if k == 0:
        return float(ph[0])
    span = transit[k] - transit[k - 1]
    frac = (target - transit[k - 1]) / span if span > 0 else 0.0
    return float(ph[k - 1] + frac * (ph[k] - ph[k - 1]))
