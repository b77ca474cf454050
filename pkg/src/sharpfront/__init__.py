"""Delayed degenerate-diffusion fronts: simulation and wave-speed shooting."""

from .analysis import (
    PerturbationReport,
    SchemeComparison,
    SpeedEstimate,
    error_vs_exact,
    front_speed,
    perturbation_decay,
    scheme_comparison,
)
from .errors import (
    ConfigError,
    EdgeLeftDomainError,
    InsufficientDataError,
    NoEdgeError,
    NumericalError,
    SharpFrontError,
)
from .kinetics import (
    CarryingCapacity,
    Kinetics,
    carrying_capacity,
    evaluate,
    fisher_kpp,
    homogeneous_dynamics,
    linear_death,
    make_kinetics,
    validate,
)
from .scheme import (
    EdgeState,
    FieldState,
    GridConfig,
    InitialCondition,
    ProblemSpec,
    SnapshotSeries,
    detect_edge,
    edge_second_derivative,
    exact_sharp_solution,
    fit_edge_coeffs,
    initialize,
    interior_laplacian,
    perturbed_wave_ic,
    refit_edge,
    run,
    sharp_wave_ic,
    sharp_wave_profile,
    step,
)
from .shooting import (
    Classification,
    PhaseCurve,
    SpeedBracket,
    WaveProfile,
    asymptotic_seed,
    classify,
    critical_speed,
    delayed_phase_map,
    integrate_profile,
    phase_curve,
)

__version__ = "0.1.0"
