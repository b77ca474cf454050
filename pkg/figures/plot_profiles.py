"""Waterfall plot of solution profiles u(t, x) from snapshot CSVs (x,u)."""

from __future__ import annotations

import argparse

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from csvread import label_from_filename, load_columns, run_cli


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("snapshots", nargs="+", help="snap_t<time>.csv files")
    parser.add_argument("--out", required=True, help="output image path")
    parser.add_argument("--title", default="profile evolution")
    args = parser.parse_args(argv)

    fig, ax = plt.subplots(figsize=(7.0, 4.5))
    for path in args.snapshots:
        data = load_columns(path, expected=["x", "u"])
        ax.plot(data["x"], data["u"], lw=1.4, label=label_from_filename(path, "t", "t"))
    ax.set_xlabel("x")
    ax.set_ylabel("u")
    ax.set_title(args.title)
    ax.legend(loc="best", fontsize=8)
    ax.grid(alpha=0.3)
    fig.tight_layout()
    fig.savefig(args.out, dpi=150)
    plt.close(fig)
    return 0


if __name__ == "__main__":
    raise SystemExit(run_cli(main))
