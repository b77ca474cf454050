"""Reaction kinetics: birth/death function pairs and the homogeneous delay ODE.

The model class is a pair (b, d) of non-decreasing reaction functions with
b(0) = d(0) = 0, b'(0) > d'(0) >= 0 and a single positive equilibrium kappa
where b(kappa) = d(kappa).  Kinetics are supplied as a small built-in family
selected by name plus parameters; see :func:`make_kinetics`.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import ConfigError

ScalarFunc = Callable[[np.ndarray | float], np.ndarray | float]

#: Absolute tolerance below which a value counts as zero in validation checks.
_ZERO_TOL = 1e-12


@dataclass(frozen=True)
class Kinetics:
    """A birth/death reaction pair with analytic derivatives.

    All four callables accept scalars or numpy arrays.  Instances are
    immutable and safe to share across concurrent runs.
    """

    name: str
    birth: ScalarFunc
    death: ScalarFunc
    birth_deriv: ScalarFunc
    death_deriv: ScalarFunc


@dataclass(frozen=True)
class CarryingCapacity:
    """The positive equilibrium where birth balances death."""

    kappa: float


def fisher_kpp(p: float = 1.0, q: float = 1.0) -> Kinetics:
    """Fisher-KPP pair b(u) = p*u, d(u) = q*u**2 with equilibrium p/q."""
    if p <= 0 or q <= 0:
        raise ConfigError(f"fisher_kpp requires p, q > 0, got p={p}, q={q}")
    return Kinetics(
        name="fisher_kpp",
        birth=lambda s: p * s,
        death=lambda s: q * s * s,
        birth_deriv=lambda s: p * np.ones_like(np.asarray(s, dtype=float)),
        death_deriv=lambda s: 2.0 * q * s,
    )


def linear_death(p: float = 1.0, a: float = 0.0, q: float = 1.0) -> Kinetics:
    """Variant with a linear death component: b(u) = p*u, d(u) = a*u + q*u**2."""
    if p <= a or a < 0 or q <= 0:
        raise ConfigError(
            f"linear_death requires p > a >= 0 and q > 0, got p={p}, a={a}, q={q}"
        )
    return Kinetics(
        name="linear_death",
        birth=lambda s: p * s,
        death=lambda s: a * s + q * s * s,
        birth_deriv=lambda s: p * np.ones_like(np.asarray(s, dtype=float)),
        death_deriv=lambda s: a + 2.0 * q * s,
    )


_FAMILIES: dict[str, Callable[..., Kinetics]] = {
    "fisher_kpp": fisher_kpp,
    "linear_death": linear_death,
}


def make_kinetics(name: str, **params: float) -> Kinetics:
    """Build a kinetics object from the registry; names are case/hyphen tolerant."""
    key = name.strip().lower().replace("-", "_")
    if key not in _FAMILIES:
        raise ConfigError(
            f"unknown kinetics {name!r}; available: {sorted(_FAMILIES)}"
        )
    return _FAMILIES[key](**params)


def evaluate(kin: Kinetics, s: float) -> tuple[float, float]:
    """Evaluate (b(s), d(s)) at a non-negative density."""
    if s < 0:
        raise ConfigError(f"density must be non-negative, got {s}")
    return float(kin.birth(s)), float(kin.death(s))


def carrying_capacity(
    kin: Kinetics, scan_max: float = 10.0, tol: float = 1e-12
) -> CarryingCapacity:
    """Locate the positive equilibrium of b - d by bracketing and bisection.

    Scans (0, scan_max] for a sign change of b - d, then bisects to ``tol``.
    Raises :class:`ConfigError` if no sign change exists in the scanned range.
    """
    if scan_max <= 0:
        raise ConfigError("scan_max must be positive")
    grid = np.linspace(0.0, scan_max, 2049)[1:]
    f = np.asarray(kin.birth(grid)) - np.asarray(kin.death(grid))
    sign_change = np.nonzero(f[:-1] * f[1:] < 0)[0]
    exact = np.nonzero(f == 0)[0]
    if len(exact):
        return CarryingCapacity(kappa=float(grid[exact[0]]))
    if not len(sign_change):
        raise ConfigError(
            f"no positive equilibrium: b - d has no sign change in (0, {scan_max}]"
        )
    lo, hi = float(grid[sign_change[0]]), float(grid[sign_change[0] + 1])
    f_lo = float(kin.birth(lo) - kin.death(lo))
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        f_mid = float(kin.birth(mid) - kin.death(mid))
        if f_mid == 0.0:
            return CarryingCapacity(kappa=mid)
        if f_lo * f_mid < 0:
            hi = mid
        else:
            lo, f_lo = mid, f_mid
    return CarryingCapacity(kappa=0.5 * (lo + hi))


def validate(kin: Kinetics, scan_max: float = 10.0, n_samples: int = 200) -> list[str]:
    """Check the standing hypotheses on (b, d); returns violated conditions.

    An empty list means every sampled check passed.  Violations are data,
    not errors: invalid kinetics never raise here.
    """
    issues: list[str] = []
    b0, d0 = float(kin.birth(0.0)), float(kin.death(0.0))
    if abs(b0) > _ZERO_TOL:
        issues.append(f"b(0) = {b0:g} != 0")
    if abs(d0) > _ZERO_TOL:
        issues.append(f"d(0) = {d0:g} != 0")

    bp0, dp0 = float(kin.birth_deriv(0.0)), float(kin.death_deriv(0.0))
    if not bp0 > dp0:
        issues.append("b'(0) <= d'(0)")
    if dp0 < -_ZERO_TOL:
        issues.append("d'(0) < 0")

    try:
        kappa = carrying_capacity(kin, scan_max=scan_max).kappa
    except ConfigError:
        kappa = None
        issues.append(f"no positive equilibrium in (0, {scan_max}]")

    hi = min(2.0 * kappa, scan_max) if kappa is not None else scan_max
    s = np.linspace(0.0, hi, n_samples)
    if np.min(kin.birth_deriv(s)) < -_ZERO_TOL:
        issues.append(f"b not non-decreasing on [0, {hi:g}]")
    if np.min(kin.death_deriv(s)) < -_ZERO_TOL:
        issues.append(f"d not non-decreasing on [0, {hi:g}]")

    # Analytic derivatives must agree with central differences.
    h = 1e-6
    mid = s[1:-1] if len(s) > 2 else s
    for label, fn, dfn in (("b", kin.birth, kin.birth_deriv), ("d", kin.death, kin.death_deriv)):
        fd = (np.asarray(fn(mid + h)) - np.asarray(fn(mid - h))) / (2.0 * h)
        an = np.asarray(dfn(mid))
        scale = np.maximum(np.abs(an), 1.0)
        if np.max(np.abs(fd - an) / scale) > 1e-5:
            issues.append(f"{label}' disagrees with finite differences")

    if kappa is not None:
        interior = s[(s > _ZERO_TOL) & (np.abs(s - kappa) > 1e-6)]
        signs = (np.asarray(kin.birth(interior)) - np.asarray(kin.death(interior))) * (
            interior - kappa
        )
        if np.any(signs >= 0):
            issues.append("(b - d)(s) * (s - kappa) not negative off the equilibria")
        # Uniqueness: exactly one sign change of b - d in the scanned range.
        grid = np.linspace(0.0, scan_max, 2049)[1:]
        f = np.asarray(kin.birth(grid)) - np.asarray(kin.death(grid))
        if int(np.sum(f[:-1] * f[1:] < 0)) > 1:
            issues.append("multiple positive equilibria in the scanned range")
    return issues


def homogeneous_dynamics(
    kin: Kinetics, r: float, U0: float, T: float, dt: float = 1e-3
) -> tuple[np.ndarray, np.ndarray]:
    """Integrate U'(t) = -d(U) + b(U(t - r)) with constant history U0.

    Explicit Euler stepping by the method of steps: the delayed value is the
    buffered level exactly ``r / dt`` steps back, so ``r`` must be an integer
    multiple of ``dt``.  Returns the (t, U) trajectory including t = 0.
    """
    if U0 < 0:
        raise ConfigError(f"initial value must be non-negative, got {U0}")
    if dt <= 0 or T <= 0:
        raise ConfigError("dt and T must be positive")
    lag = r / dt
    n_lag = int(round(lag))
    if abs(lag - n_lag) > 1e-9:
        raise ConfigError(f"delay r={r} is not an integer multiple of dt={dt}")
    n_steps = int(round(T / dt))
    birth, death = kin.birth, kin.death

    u = float(U0)
    buffer: deque[float] = deque([u] * n_lag)
    out = np.empty(n_steps + 1)
    out[0] = u
    for i in range(n_steps):
        u_del = buffer[0] if n_lag else u
        u_next = u + dt * (float(birth(u_del)) - float(death(u)))
        if n_lag:
            buffer.append(u)
            buffer.popleft()
        u = u_next
        out[i + 1] = u
    t = np.arange(n_steps + 1) * dt
    return t, out
