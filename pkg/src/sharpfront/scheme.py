"""Edge-tracked explicit finite differences for u_t = (u^2)_xx - d(u) + b(u(t-r,x)).

The solution keeps semi-compact support: u = 0 left of a tracked edge point
x_hat inside the cell (x_{k-1}, x_k].  Away from the edge the diffusion term
is the classical second difference of u^2; at the edge cell it is evaluated
from the local ansatz

    u(t, x) = c1*(x - x_hat)_+ + c2*(x - x_hat)_+^2,

whose coefficients are fitted to the three leftmost positive values.  After
each explicit Euler step the ansatz is refitted together with a new edge
position, and the edge cell index moves left once the edge has crossed a
full cell.  The delay term is an exact ring-buffer lookup: dt divides r, so
u(t - r) is the level exactly r/dt steps back.

A ``classical`` mode disables all edge logic (plain second differences plus
clamping) and serves as the baseline for comparison.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, replace
from typing import Callable

import numpy as np

from .errors import ConfigError, EdgeLeftDomainError, NoEdgeError, NumericalError
from .kinetics import Kinetics

#: Values at or below this count as exact zeros when locating the edge.
ZERO_TOL = 1e-14

#: Below this |c2| the edge-offset quadratic degenerates to the linear solve.
_C2_LINEAR_TOL = 1e-12


@dataclass(frozen=True)
class ProblemSpec:
    """Physics of one simulation: kinetics, equilibrium, delay."""

    kinetics: Kinetics
    kappa: float
    r: float = 0.0
    m: float = 2.0

    def __post_init__(self) -> None:
        if self.m != 2.0:
            raise ConfigError(
                "the edge-tracked scheme is specific to m=2 "
                f"(general m is handled by the shooting module), got m={self.m}"
            )
        if self.r < 0:
            raise ConfigError(f"delay must be non-negative, got r={self.r}")
        if self.kappa <= 0:
            raise ConfigError(f"kappa must be positive, got {self.kappa}")


@dataclass(frozen=True)
class GridConfig:
    x_min: float = -15.0
    x_max: float = 60.0
    dx: float = 0.05
    T: float = 10.0
    cfl: float = 0.45
    dt: float | None = None

    def __post_init__(self) -> None:
        if self.dx <= 0:
            raise ConfigError(f"dx must be positive, got {self.dx}")
        if self.x_max <= self.x_min:
            raise ConfigError("x_max must exceed x_min")
        n = (self.x_max - self.x_min) / self.dx
        if abs(n - round(n)) > 1e-9:
            raise ConfigError(
                f"(x_max - x_min)/dx = {n} must be integral"
            )
        if self.T <= 0:
            raise ConfigError(f"T must be positive, got {self.T}")
        if not 0 < self.cfl <= 1:
            raise ConfigError(f"cfl must lie in (0, 1], got {self.cfl}")

    @property
    def n_cells(self) -> int:
        return int(round((self.x_max - self.x_min) / self.dx))

    def points(self) -> np.ndarray:
        return self.x_min + self.dx * np.arange(self.n_cells + 1)


@dataclass(frozen=True)
class EdgeState:
    """The tracked free boundary: x_hat in (x_{k-1}, x_k] plus ansatz coefficients."""

    k: int
    x_hat: float
    c1: float
    c2: float
    residual: float = 0.0
    fallback: bool = False


@dataclass
class FieldState:
    """PDE state at one time level, including the delay ring buffer.

    ``history`` holds exactly r/dt past levels, oldest first, so that
    ``history[0]`` is the field at t - r.  ``edge`` is None when the support
    covers the whole grid (classical update everywhere).
    """

    t: float
    u: np.ndarray
    edge: EdgeState | None
    history: deque[np.ndarray]
    last_edge_step: float = 0.0


@dataclass(frozen=True)
class InitialCondition:
    """Named initial history u0(s, x); the name gates exact-solution checks."""

    name: str
    fn: Callable[[float, np.ndarray], np.ndarray]


def sharp_wave_profile(xi: np.ndarray | float) -> np.ndarray:
    """The explicit critical profile (1 - exp(-xi/2))_+ for m=2, r=0, b-d = u-u^2."""
    return np.maximum(1.0 - np.exp(-np.asarray(xi, dtype=float) / 2.0), 0.0)


def exact_sharp_solution(t: float, x: np.ndarray) -> np.ndarray:
    """Exact solution (1 - exp((-x-t)/2))_+ of the non-delayed m=2 equation."""
    return sharp_wave_profile(np.asarray(x, dtype=float) + t)


def sharp_wave_ic() -> InitialCondition:
    return InitialCondition("sharp_wave", lambda s, x: sharp_wave_profile(x))


def scaled_sharp_wave_ic(factor: float) -> InitialCondition:
    return InitialCondition(
        f"sharp_wave_x{factor:g}", lambda s, x: factor * sharp_wave_profile(x)
    )


def perturbed_wave_ic(amplitude: float = 0.2) -> InitialCondition:
    """Sharp wave plus amplitude*sin(pi*(x-2)/20) supported on [2, 42]."""

    def fn(s: float, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        bump = amplitude * np.sin(np.pi * (x - 2.0) / 20.0)
        bump = np.where((x >= 2.0) & (x <= 42.0), bump, 0.0)
        return sharp_wave_profile(x) + bump

    return InitialCondition("perturbed_wave", fn)


def constant_ic(value: float) -> InitialCondition:
    return InitialCondition(
        f"constant_{value:g}", lambda s, x: np.full_like(np.asarray(x, float), value)
    )


INITIAL_CONDITIONS: dict[str, Callable[[], InitialCondition]] = {
    "sharp_wave": sharp_wave_ic,
    "perturbed_wave": perturbed_wave_ic,
}


@dataclass(frozen=True)
class Discretization:
    """Resolved time/space discretization of one run."""

    x: np.ndarray
    dx: float
    dt: float
    n_delay: int
    n_steps: int
    bc_left: float
    bc_right: float


def resolve_time_step(
    grid: GridConfig, r: float, kappa: float, m: float = 2.0
) -> tuple[float, int, int]:
    """Pick (dt, n_delay, n_steps) honoring the CFL bound and exact delay indexing.

    dt starts from cfl*dx^2 / (2*m*kappa^(m-1)) and is reduced so that r/dt
    is an integer (and, when possible, T/dt as well, so runs land exactly on
    T).  An explicitly configured dt is validated instead.
    """
    dt_max = grid.cfl * grid.dx**2 / (2.0 * m * kappa ** (m - 1.0))
    if grid.dt is not None:
        dt = grid.dt
        if dt <= 0:
            raise ConfigError(f"dt must be positive, got {dt}")
        if dt > dt_max * (1.0 + 1e-12):
            raise ConfigError(
                f"dt={dt} violates the CFL bound {dt_max:.6g} "
                f"(cfl*dx^2/(2*m*kappa^(m-1)))"
            )
        if r > 0:
            n_delay = int(round(r / dt))
            if n_delay < 1 or abs(r / dt - n_delay) > 1e-9:
                raise ConfigError(f"r={r} is not an integer multiple of dt={dt}")
        else:
            n_delay = 0
    elif r > 0:
        n_delay = max(int(math.ceil(r / dt_max - 1e-12)), 1)
        # Prefer a delay count that also makes T an integer number of steps.
        for cand in range(n_delay, n_delay + 2000):
            steps = grid.T * cand / r
            if abs(steps - round(steps)) < 1e-9:
                n_delay = cand
                break
        dt = r / n_delay
    else:
        n_delay = 0
        dt = grid.T / max(int(math.ceil(grid.T / dt_max - 1e-12)), 1)
    n_steps = max(int(round(grid.T / dt)), 1)
    return dt, n_delay, n_steps


def discretize(problem: ProblemSpec, grid: GridConfig, ic: InitialCondition) -> Discretization:
    dt, n_delay, n_steps = resolve_time_step(grid, problem.r, problem.kappa, problem.m)
    x = grid.points()
    u0_now = np.asarray(ic.fn(0.0, x), dtype=float)
    return Discretization(
        x=x,
        dx=grid.dx,
        dt=dt,
        n_delay=n_delay,
        n_steps=n_steps,
        bc_left=float(u0_now[0]),
        bc_right=float(u0_now[-1]),
    )


def detect_edge(u: np.ndarray, zero_tol: float = ZERO_TOL) -> int:
    """Index of the leftmost strictly positive cell.

    By convention detection from values alone returns the first index with
    u above the zero tolerance; the tracked edge cell may additionally sit
    one node left of this (u_k = 0 exactly with x_hat = x_k).
    """
    positive = np.nonzero(u > zero_tol)[0]
    if len(positive) == 0:
        raise NoEdgeError("no edge: the field is identically zero")
    k = int(positive[0])
    if k == 0:
        raise EdgeLeftDomainError(
            "edge left the domain: the support touches the left boundary"
        )
    return k


def fit_edge_coeffs(
    u3: np.ndarray, x_hat: float, x_k: float, dx: float
) -> tuple[float, float, float]:
    """Least-squares (c1, c2) of u ~ c1*d + c2*d^2 at the three edge nodes.

    ``u3`` holds (u_k, u_{k+1}, u_{k+2}) and x_hat is known, so the system
    is linear and overdetermined (3x2); the residual norm doubles as a
    diagnostic of how well the edge ansatz describes the data.
    """
    d0 = x_k - x_hat
    if d0 < -1e-12:
        raise ConfigError(f"x_hat={x_hat} lies right of the edge node x_k={x_k}")
    d = max(d0, 0.0) + dx * np.arange(3.0)
    a = np.column_stack([d, d * d])
    coef, _, rank, _ = np.linalg.lstsq(a, np.asarray(u3, dtype=float), rcond=None)
    if rank < 2:
        raise NumericalError("edge fit is singular (degenerate node spacing)")
    residual = float(np.linalg.norm(a @ coef - u3))
    return float(coef[0]), float(coef[1]), residual


def edge_second_derivative(c1: float, c2: float, d_k: float) -> float:
    """(u^2)_xx at the edge node from the ansatz: 2*c1^2 + 12*c1*c2*(x_k - x_hat)_+."""
    return 2.0 * c1 * c1 + 12.0 * c1 * c2 * max(d_k, 0.0)


def interior_laplacian(u: np.ndarray, j: int, dx: float) -> float:
    """Classical second difference of u^2 at an interior node."""
    if j < 1 or j > len(u) - 2:
        raise ConfigError(f"index {j} is not interior to the grid")
    return (u[j + 1] ** 2 + u[j - 1] ** 2 - 2.0 * u[j] ** 2) / (dx * dx)


def _solve_edge_system(
    uk: float, uk1: float, uk2: float, dx: float, zero_tol: float = ZERO_TOL
) -> tuple[float, float, float] | None:
    """Closed-form (c1, c2, d) with d = x_k - x_hat from three node values.

    The second difference fixes c2; the edge offset solves
    c2*d^2 - B*d + u_k = 0 with B = (u_{k+1} - u_k)/dx - c2*dx, taking the
    smaller non-negative real root.  Returns None when no such root exists.
    """
    if uk <= zero_tol:
        # Edge sits exactly on the node: two-point exact fit.
        c2 = (uk2 - 2.0 * uk1) / (2.0 * dx * dx)
        c1 = (4.0 * uk1 - uk2) / (2.0 * dx)
        return c1, c2, 0.0
    c2 = (uk2 - 2.0 * uk1 + uk) / (2.0 * dx * dx)
    b_lin = (uk1 - uk) / dx - c2 * dx
    if abs(c2) < _C2_LINEAR_TOL:
        if b_lin <= 0:
            return None
        d = uk / b_lin
        return b_lin - 2.0 * c2 * d, c2, d
    disc = b_lin * b_lin - 4.0 * c2 * uk
    # In exact arithmetic disc = c1^2, so a vanishing disc is the double
    # root d = B/(2*c2) (pure-quadratic edge); solving via sqrt there would
    # amplify rounding noise.
    scale = b_lin * b_lin + 4.0 * abs(c2 * uk)
    if abs(disc) <= 1e-12 * scale:
        d = b_lin / (2.0 * c2)
        if d < 0:
            return None
        return b_lin - 2.0 * c2 * d, c2, d
    if disc < 0:
        return None
    sq = math.sqrt(disc)
    # Stable quadratic roots: avoids B - sqrt(disc) cancellation when the
    # quadratic term is tiny relative to the slope.
    q = 0.5 * (b_lin + math.copysign(sq, b_lin)) if b_lin != 0.0 else 0.5 * sq
    roots = sorted((q / c2, uk / q))
    non_negative = [root for root in roots if root >= 0.0]
    if not non_negative:
        return None
    d = non_negative[0]
    return b_lin - 2.0 * c2 * d, c2, d


def _ansatz_values(c1: float, c2: float, x_hat: float, xs: np.ndarray) -> np.ndarray:
    d = np.maximum(xs - x_hat, 0.0)
    return c1 * d + c2 * d * d


def refit_edge(
    u3: np.ndarray,
    x_k: float,
    dx: float,
    previous: EdgeState,
    prev_displacement: float = 0.0,
) -> EdgeState:
    """Relocate the edge from three updated node values (step iv).

    On breakdown (no non-negative real root, or an implausible jump
    d > 2*dx) the previous edge is carried forward by its last per-step
    displacement, the coefficients are least-squares fitted, and the state
    is flagged for diagnostics.
    """
    uk, uk1, uk2 = (float(v) for v in u3)
    sol = _solve_edge_system(uk, uk1, uk2, dx)
    if sol is not None:
        c1, c2, d = sol
        if d <= 2.0 * dx:
            x_hat = x_k - d
            xs = x_k + dx * np.arange(3.0)
            residual = float(
                np.max(np.abs(_ansatz_values(c1, c2, x_hat, xs) - np.asarray(u3)))
            )
            return EdgeState(previous.k, x_hat, c1, c2, residual, fallback=False)
    x_hat = min(previous.x_hat + prev_displacement, x_k)
    c1, c2, residual = fit_edge_coeffs(np.asarray(u3, dtype=float), x_hat, x_k, dx)
    return EdgeState(previous.k, x_hat, c1, c2, residual, fallback=True)


def initialize(
    problem: ProblemSpec, grid: GridConfig, ic: InitialCondition
) -> FieldState:
    """Sample the initial history and detect/fit the support edge."""
    disc = discretize(problem, grid, ic)
    x = disc.x
    u = np.asarray(ic.fn(0.0, x), dtype=float)
    if np.any(u < 0):
        raise ConfigError("initial data must be non-negative")
    history: deque[np.ndarray] = deque()
    for j in range(disc.n_delay, 0, -1):
        level = np.asarray(ic.fn(-j * disc.dt, x), dtype=float)
        if np.any(level < 0):
            raise ConfigError("initial history must be non-negative")
        history.append(level)
    try:
        k0 = detect_edge(u)
    except EdgeLeftDomainError:
        return FieldState(t=0.0, u=u, edge=None, history=history)
    edge = _initial_edge(u, k0, x, grid.dx)
    return FieldState(t=0.0, u=u, edge=edge, history=history)


def _initial_edge(u: np.ndarray, k0: int, x: np.ndarray, dx: float) -> EdgeState:
    if k0 + 2 > len(u) - 1:
        raise ConfigError("support too thin: need two positive nodes right of the edge")
    sol = _solve_edge_system(float(u[k0]), float(u[k0 + 1]), float(u[k0 + 2]), dx)
    if sol is not None and sol[2] < dx:
        c1, c2, d = sol
        k = k0
        x_hat = x[k0] - d
    else:
        # The data extrapolate to (or past) the previous node, which is an
        # exact zero: snap the edge onto it and fit through the two
        # positive neighbors.
        if k0 - 1 == 0:
            raise EdgeLeftDomainError("edge left the domain at initialization")
        k = k0 - 1
        x_hat = x[k]
        two_point = _solve_edge_system(0.0, float(u[k0]), float(u[k0 + 1]), dx)
        assert two_point is not None
        c1, c2, _ = two_point
    xs = x[k : k + 3]
    residual = float(np.max(np.abs(_ansatz_values(c1, c2, x_hat, xs) - u[k : k + 3])))
    return EdgeState(k=k, x_hat=float(x_hat), c1=c1, c2=c2, residual=residual)


def step(
    state: FieldState,
    problem: ProblemSpec,
    grid: GridConfig,
    disc: Discretization | None = None,
) -> tuple[FieldState, float]:
    """Advance one explicit Euler step; returns (new state, clamped mass).

    Clamped mass is dx times the total magnitude of negative values zeroed
    after the update (0 for a healthy sharp-scheme step).
    """
    if disc is None:
        dt, n_delay, _ = resolve_time_step(grid, problem.r, problem.kappa, problem.m)
        disc = Discretization(
            x=grid.points(),
            dx=grid.dx,
            dt=dt,
            n_delay=n_delay,
            n_steps=1,
            bc_left=float(state.u[0]),
            bc_right=float(state.u[-1]),
        )
    u = state.u
    n_last = len(u) - 1
    dx, dt = disc.dx, disc.dt
    kin = problem.kinetics
    u_del = state.history[0] if disc.n_delay else u
    birth_del = np.asarray(kin.birth(u_del), dtype=float)
    death_u = np.asarray(kin.death(u), dtype=float)
    um = u * u
    u_new = u.copy()
    edge = state.edge
    displacement = 0.0

    if edge is None:
        lap = (um[2:] + um[:-2] - 2.0 * um[1:-1]) / (dx * dx)
        u_new[1:n_last] = u[1:n_last] + dt * (
            lap[: n_last - 1] - death_u[1:n_last] + birth_del[1:n_last]
        )
        u_new[0] = disc.bc_left
        u_new[n_last] = disc.bc_right
        new_edge: EdgeState | None = None
    else:
        k = edge.k
        if k + 3 > n_last:
            raise ConfigError("support edge too close to the right boundary")
        c1, c2, _ = fit_edge_coeffs(u[k : k + 3], edge.x_hat, disc.x[k], dx)
        lap_k = edge_second_derivative(c1, c2, disc.x[k] - edge.x_hat)
        j0 = k + 1
        lap = (um[j0 + 1 : n_last + 1] + um[j0 - 1 : n_last - 1] - 2.0 * um[j0:n_last]) / (
            dx * dx
        )
        u_new[j0:n_last] = u[j0:n_last] + dt * (
            lap - death_u[j0:n_last] + birth_del[j0:n_last]
        )
        u_new[k] = u[k] + dt * (lap_k - death_u[k] + birth_del[k])
        u_new[:k] = 0.0
        u_new[n_last] = disc.bc_right

        new_edge = refit_edge(
            u_new[k : k + 3], disc.x[k], dx, edge, state.last_edge_step
        )
        crossing = disc.x[k] - new_edge.x_hat
        if crossing >= 2.0 * dx:
            raise NumericalError(
                f"edge moved {crossing:.3g} >= 2*dx in one step at t={state.t:.6g}; "
                "the CFL bound should prevent multi-cell crossings"
            )
        if crossing >= dx:
            if k - 1 <= 0:
                raise EdgeLeftDomainError(
                    f"edge reached the left boundary at t={state.t:.6g}; "
                    "enlarge the domain"
                )
            delta = disc.x[k - 1] - new_edge.x_hat
            u_new[k - 1] = max(
                new_edge.c1 * delta + new_edge.c2 * delta * delta, 0.0
            )
            new_edge = replace(new_edge, k=k - 1)
        displacement = new_edge.x_hat - edge.x_hat

    negative = u_new < 0.0
    clamped_mass = float(-u_new[negative].sum() * dx) if negative.any() else 0.0
    if clamped_mass:
        u_new[negative] = 0.0

    if disc.n_delay:
        history = state.history.copy()
        history.append(u)
        history.popleft()
    else:
        history = state.history
    new_state = FieldState(
        t=state.t + dt,
        u=u_new,
        edge=new_edge,
        history=history,
        last_edge_step=displacement,
    )
    return new_state, clamped_mass


def front_position_from_profile(
    x: np.ndarray, u: np.ndarray, zero_tol: float = ZERO_TOL
) -> float:
    """Sub-grid front estimate for fields without a tracked edge.

    Linear extrapolation to zero from the two leftmost positive values,
    clipped to the first positive cell.
    """
    k = detect_edge(u, zero_tol)
    if k + 1 <= len(u) - 1 and u[k + 1] > u[k]:
        dx = x[1] - x[0]
        x_e = x[k] - dx * u[k] / (u[k + 1] - u[k])
        return float(np.clip(x_e, x[k] - dx, x[k]))
    return float(x[k])


@dataclass
class SnapshotSeries:
    """Output of one run: snapshots at requested times plus the edge trajectory."""

    problem: ProblemSpec
    grid: GridConfig
    ic_name: str
    scheme: str
    x: np.ndarray
    times: np.ndarray
    snapshots: list[np.ndarray]
    edge_t: np.ndarray
    edge_x: np.ndarray
    edge_c1: np.ndarray
    edge_c2: np.ndarray
    edge_k: np.ndarray
    clamped_mass: np.ndarray
    support_clean: bool
    fallback_steps: int
    dt: float
    n_delay: int

    @property
    def final_front(self) -> float:
        return float(self.edge_x[-1])


def run(
    problem: ProblemSpec,
    grid: GridConfig,
    ic: InitialCondition,
    snapshot_times: tuple[float, ...] = (),
    scheme: str = "sharp",
) -> SnapshotSeries:
    """Step from t=0 to T recording the edge trajectory and snapshots."""
    if scheme not in ("sharp", "classical"):
        raise ConfigError(f"scheme must be 'sharp' or 'classical', got {scheme!r}")
    disc = discretize(problem, grid, ic)
    state = initialize(problem, grid, ic)
    if scheme == "classical":
        state.edge = None

    snap_steps: dict[int, float] = {}
    for t_req in snapshot_times:
        idx = int(round(t_req / disc.dt))
        if not 0 <= idx <= disc.n_steps:
            raise ConfigError(f"snapshot time {t_req} outside [0, {grid.T}]")
        snap_steps[idx] = t_req

    n_rec = disc.n_steps + 1
    edge_t = np.empty(n_rec)
    edge_x = np.empty(n_rec)
    edge_c1 = np.empty(n_rec)
    edge_c2 = np.empty(n_rec)
    edge_k = np.empty(n_rec, dtype=int)
    clamped = np.zeros(n_rec)
    support_clean = True
    fallback_steps = 0
    times: list[float] = []
    snapshots: list[np.ndarray] = []

    def record(i: int, st: FieldState) -> None:
        edge_t[i] = st.t
        if st.edge is not None:
            edge_x[i] = st.edge.x_hat
            edge_c1[i] = st.edge.c1
            edge_c2[i] = st.edge.c2
            edge_k[i] = st.edge.k
        else:
            k = detect_edge(st.u)
            dx = grid.dx
            edge_x[i] = front_position_from_profile(disc.x, st.u)
            edge_c1[i] = (st.u[k + 1] - st.u[k]) / dx if k + 1 < len(st.u) else 0.0
            edge_c2[i] = 0.0
            edge_k[i] = k
        if i in snap_steps:
            times.append(snap_steps[i])
            snapshots.append(st.u.copy())

    record(0, state)
    for i in range(1, disc.n_steps + 1):
        state, cm = step(state, problem, grid, disc)
        clamped[i] = cm
        if state.edge is not None:
            if state.edge.fallback:
                fallback_steps += 1
            if state.edge.k > 0 and np.any(state.u[: state.edge.k] > ZERO_TOL):
                support_clean = False
        record(i, state)

    return SnapshotSeries(
        problem=problem,
        grid=grid,
        ic_name=ic.name,
        scheme=scheme,
        x=disc.x,
        times=np.asarray(times),
        snapshots=snapshots,
        edge_t=edge_t,
        edge_x=edge_x,
        edge_c1=edge_c1,
        edge_c2=edge_c2,
        edge_k=edge_k,
        clamped_mass=clamped,
        support_clean=support_clean,
        fallback_steps=fallback_steps,
        dt=disc.dt,
        n_delay=disc.n_delay,
    )
