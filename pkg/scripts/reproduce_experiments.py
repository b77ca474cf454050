#!/usr/bin/env python3
"""Reproduce every numerical experiment end to end through the CLI.

Writes CSV artifacts under --out (default out/):

  r0/, r0.1/      snapshot series and edge trajectories with and without delay
  sweep/          per-delay trajectories, bisection logs, speed_comparison.csv
  fan/            shooting profiles around the r=0.1 critical speed
  pert/           perturbation experiment (deviation series + snapshots)
  compare/        sharp vs classical baseline report

Pass --figures to also render the five figure analogues into out/figures/.
"""

from __future__ import annotations

import argparse
import subprocess
import sys
from pathlib import Path

REPO = Path(__file__).resolve().parents[1]
FAN_SPEEDS = ("0.85", "0.89", "0.91", "0.93", "0.97")


def cli(*args: str) -> None:
    subprocess.run([sys.executable, "-m", "sharpfront.cli", *args], check=True)


def render(script: str, *args: str) -> None:
    subprocess.run([sys.executable, str(REPO / "figures" / script), *args], check=True)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="out")
    parser.add_argument("--figures", action="store_true", help="also render figures")
    args = parser.parse_args()
    out = Path(args.out)
    snap = ",".join(str(t) for t in range(11))

    cli("simulate", "--out", str(out / "r0"), "--set", "pde.r=0",
        "--set", f"pde.snapshot_times={snap}")
    cli("simulate", "--out", str(out / "r0.1"), "--set", "pde.r=0.1",
        "--set", f"pde.snapshot_times={snap}")
    cli("sweep", "--out", str(out / "sweep"))
    for c in FAN_SPEEDS:
        cli("profile", "--c", c, "--out", str(out / "fan"), "--set", "shooting.r=0.1")
    cli("perturb", "--out", str(out / "pert"), "--set", "pde.r=0.1")
    cli("compare", "--out", str(out / "compare"))

    if args.figures:
        fig = out / "figures"
        fig.mkdir(parents=True, exist_ok=True)
        render("plot_profiles.py",
               *[str(out / "r0.1" / f"snap_t{t}.csv") for t in (0, 2, 4, 6, 8, 10)],
               "--out", str(fig / "profiles.png"), "--title", "delayed profile evolution")
        render("plot_surface3d.py",
               *[str(out / "r0.1" / f"snap_t{t}.csv") for t in range(11)],
               "--out", str(fig / "surface3d.png"))
        render("plot_edge_trajectories.py",
               *[str(out / "sweep" / f"edge_trajectory_r{r}.csv")
                 for r in ("0", "0.1", "0.2", "0.3")],
               "--out", str(fig / "edge_trajectories.png"))
        render("plot_shooting_fan.py",
               *[str(out / "fan" / f"profile_c{c}.csv") for c in FAN_SPEEDS],
               "--out", str(fig / "shooting_fan.png"))
        render("plot_perturbation.py", str(out / "pert" / "perturbation_deviation.csv"),
               "--snapshots",
               *[str(out / "pert" / f"snap_t{t}_perturbed.csv") for t in (0, 5, 10)],
               "--out", str(fig / "perturbation.png"))

    print(f"artifacts written under {out}/")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
