"""Run configuration: flat ``key = value`` files with dotted section prefixes.

Example::

    # delayed run
    kinetics.name = fisher_kpp
    kinetics.p = 1.0
    pde.r = 0.1
    pde.snapshot_times = 0, 2, 4, 6, 8, 10
    shooting.tol = 1e-4

Any key may also be overridden on the command line via ``--set KEY=VALUE``.
Unknown keys are rejected before any computation starts.
"""

from __future__ import annotations

from dataclasses import dataclass, field, fields
from pathlib import Path

from .errors import ConfigError


@dataclass
class KineticsSection:
    name: str = "fisher_kpp"
    params: dict[str, float] = field(default_factory=dict)


@dataclass
class PdeSection:
    m: float = 2.0
    r: float = 0.0
    x_min: float = -15.0
    x_max: float = 60.0
    dx: float = 0.05
    cfl: float = 0.45
    dt: float | None = None
    T: float = 10.0
    scheme: str = "sharp"
    snapshot_times: tuple[float, ...] = (0.0, 2.0, 4.0, 6.0, 8.0, 10.0)


@dataclass
class ShootingSection:
    m: float = 2.0
    r: float = 0.0
    tol: float = 1e-4
    xi_max: float = 50.0
    phi0: float | None = None
    c: float | None = None


@dataclass
class SweepSection:
    r_values: tuple[float, ...] = (0.0, 0.1, 0.2, 0.3)


@dataclass
class AnalysisSection:
    window_start: float | None = None
    window_end: float | None = None
    compare_time: float = 5.0


@dataclass
class PerturbSection:
    amplitude: float = 0.2


@dataclass
class HomogSection:
    U0: float = 0.5
    T: float = 50.0
    dt: float = 1e-3
    r: float = 0.0


@dataclass
class RunConfig:
    kinetics: KineticsSection = field(default_factory=KineticsSection)
    pde: PdeSection = field(default_factory=PdeSection)
    shooting: ShootingSection = field(default_factory=ShootingSection)
    sweep: SweepSection = field(default_factory=SweepSection)
    analysis: AnalysisSection = field(default_factory=AnalysisSection)
    perturb: PerturbSection = field(default_factory=PerturbSection)
    homog: HomogSection = field(default_factory=HomogSection)


def _parse_float(text: str) -> float:
    try:
        return float(text)
    except ValueError as exc:
        raise ConfigError(f"expected a number, got {text!r}") from exc


def _parse_optional_float(text: str) -> float | None:
    if text.strip().lower() in ("none", ""):
        return None
    return _parse_float(text)


def _parse_float_tuple(text: str) -> tuple[float, ...]:
    items = [s for s in (part.strip() for part in text.split(",")) if s]
    return tuple(_parse_float(s) for s in items)


def _parse_scheme(text: str) -> str:
    scheme = text.strip().lower()
    if scheme not in ("sharp", "classical"):
        raise ConfigError(f"scheme must be 'sharp' or 'classical', got {text!r}")
    return scheme


_PARSERS = {
    "pde.m": _parse_float,
    "pde.r": _parse_float,
    "pde.x_min": _parse_float,
    "pde.x_max": _parse_float,
    "pde.dx": _parse_float,
    "pde.cfl": _parse_float,
    "pde.dt": _parse_optional_float,
    "pde.T": _parse_float,
    "pde.scheme": _parse_scheme,
    "pde.snapshot_times": _parse_float_tuple,
    "shooting.m": _parse_float,
    "shooting.r": _parse_float,
    "shooting.tol": _parse_float,
    "shooting.xi_max": _parse_float,
    "shooting.phi0": _parse_optional_float,
    "shooting.c": _parse_optional_float,
    "sweep.r_values": _parse_float_tuple,
    "analysis.window_start": _parse_optional_float,
    "analysis.window_end": _parse_optional_float,
    "analysis.compare_time": _parse_float,
    "perturb.amplitude": _parse_float,
    "homog.U0": _parse_float,
    "homog.T": _parse_float,
    "homog.dt": _parse_float,
    "homog.r": _parse_float,
}


def parse_config_text(text: str, source: str = "<config>") -> dict[str, str]:
    """Parse ``key = value`` lines; '#' starts a comment, blanks are skipped."""
    entries: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{source}:{lineno}: expected 'key = value', got {raw!r}")
        key, value = line.split("=", 1)
        key = key.strip()
        if not key:
            raise ConfigError(f"{source}:{lineno}: empty key")
        if key in entries:
            raise ConfigError(f"{source}:{lineno}: duplicate key {key!r}")
        entries[key] = value.strip()
    return entries


def apply_entries(config: RunConfig, entries: dict[str, str]) -> RunConfig:
    section_names = {f.name for f in fields(RunConfig)}
    for key, value in entries.items():
        if key in _PARSERS:
            section_name, field_name = key.split(".", 1)
            setattr(getattr(config, section_name), field_name, _PARSERS[key](value))
            continue
        if key == "kinetics.name":
            config.kinetics.name = value
            continue
        if key.startswith("kinetics.") and key.count(".") == 1:
            config.kinetics.params[key.split(".", 1)[1]] = _parse_float(value)
            continue
        head = key.split(".", 1)[0]
        hint = f" (known section {head!r})" if head in section_names else ""
        raise ConfigError(f"unknown config key {key!r}{hint}")
    return config


def load_config(
    path: str | Path | None = None, overrides: list[str] | None = None
) -> RunConfig:
    """Defaults, then the config file (if any), then --set overrides."""
    config = RunConfig()
    if path is not None:
        path = Path(path)
        if not path.is_file():
            raise ConfigError(f"config file not found: {path}")
        apply_entries(config, parse_config_text(path.read_text(), source=str(path)))
    for item in overrides or []:
        if "=" not in item:
            raise ConfigError(f"--set expects KEY=VALUE, got {item!r}")
        key, value = item.split("=", 1)
        apply_entries(config, {key.strip(): value.strip()})
    return config
