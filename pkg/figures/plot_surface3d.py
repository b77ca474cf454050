"""3-D surface of u(t, x) assembled from a series of snapshot CSVs."""

from __future__ import annotations

import argparse
import re
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from csvread import FigureInputError, load_columns, run_cli


def _time_of(path: str) -> float:
    match = re.search(r"t([-+0-9.eE]+)", Path(path).stem)
    if not match:
        raise FigureInputError(f"cannot parse a time out of {path!r}")
    return float(match.group(1))


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("snapshots", nargs="+", help="snap_t<time>.csv files")
    parser.add_argument("--out", required=True)
    parser.add_argument("--title", default="solution surface")
    args = parser.parse_args(argv)

    if len(args.snapshots) < 2:
        raise FigureInputError("surface plot needs at least two snapshots")
    frames = sorted((_time_of(p), load_columns(p, expected=["x", "u"])) for p in args.snapshots)
    x = frames[0][1]["x"]
    for _, data in frames[1:]:
        if len(data["x"]) != len(x):
            raise FigureInputError("snapshots are on different grids")
    times = np.array([t for t, _ in frames])
    u = np.vstack([data["u"] for _, data in frames])

    fig = plt.figure(figsize=(7.0, 5.0))
    ax = fig.add_subplot(projection="3d")
    tt, xx = np.meshgrid(times, x, indexing="ij")
    ax.plot_surface(xx, tt, u, cmap="viridis", rstride=1, cstride=8, linewidth=0)
    ax.set_xlabel("x")
    ax.set_ylabel("t")
    ax.set_zlabel("u")
    ax.set_title(args.title)
    fig.tight_layout()
    fig.savefig(args.out, dpi=150)
    plt.close(fig)
    return 0


if __name__ == "__main__":
    raise SystemExit(run_cli(main))
