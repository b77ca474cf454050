from __future__ import annotations

import pytest

from drivers import run_primary_cli


@pytest.fixture(scope="session")
def acceptance_csvs(tmp_path_factory):
    """CSV artifacts of the full experiment runs, produced through the CLI only."""
    out = tmp_path_factory.mktemp("acceptance_out")
    snap_times = ",".join(str(t) for t in range(11))
    commands = [
        # r=0 and r=0.1 snapshot series (profiles + 3-D surface)
        ["simulate", "--out", str(out / "r0"), "--quiet",
         "--set", "pde.r=0", "--set", f"pde.snapshot_times={snap_times}"],
        ["simulate", "--out", str(out / "r0.1"), "--quiet",
         "--set", "pde.r=0.1", "--set", f"pde.snapshot_times={snap_times}"],
        # labeled edge trajectories plus the speed table for the delay sweep
        ["sweep", "--out", str(out / "sweep"), "--quiet"],
        # shooting fan around the r=0.1 critical speed
        *(
            ["profile", "--c", c, "--out", str(out / "fan"), "--quiet",
             "--set", "shooting.r=0.1"]
            for c in ("0.85", "0.89", "0.91", "0.93", "0.97")
        ),
        # perturbation experiment (delayed case)
        ["perturb", "--out", str(out / "pert"), "--quiet", "--set", "pde.r=0.1"],
    ]
    for cmd in commands:
        proc = run_primary_cli(*cmd)
        assert proc.returncode == 0, f"{cmd} failed: {proc.stderr}"
    return out
