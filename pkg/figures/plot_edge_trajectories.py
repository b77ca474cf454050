"""Edge position x_hat(t) for several delays, one curve per trajectory CSV."""

from __future__ import annotations

import argparse

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from csvread import label_from_filename, load_columns, run_cli


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("trajectories", nargs="+", help="edge_trajectory*.csv files")
    parser.add_argument("--out", required=True)
    parser.add_argument("--title", default="edge point vs time")
    args = parser.parse_args(argv)

    fig, ax = plt.subplots(figsize=(6.5, 4.5))
    for path in args.trajectories:
        data = load_columns(path, expected=["t", "x_hat"])
        ax.plot(data["t"], data["x_hat"], lw=1.4, label=label_from_filename(path, "r", "r"))
    ax.set_xlabel("t")
    ax.set_ylabel("edge position")
    ax.set_title(args.title)
    ax.legend(loc="best", fontsize=8)
    ax.grid(alpha=0.3)
    fig.tight_layout()
    fig.savefig(args.out, dpi=150)
    plt.close(fig)
    return 0


if __name__ == "__main__":
    raise SystemExit(run_cli(main))
