"""Perturbation experiment: deviation decay plus perturbed profile evolution."""

from __future__ import annotations

import argparse

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from csvread import label_from_filename, load_columns, run_cli


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("deviation", help="perturbation_deviation.csv")
    parser.add_argument("--snapshots", nargs="*", default=[],
                        help="perturbed snap_t<time>_perturbed.csv files")
    parser.add_argument("--out", required=True)
    args = parser.parse_args(argv)

    dev = load_columns(args.deviation, expected=["t", "deviation"])
    n_panels = 2 if args.snapshots else 1
    fig, axes = plt.subplots(1, n_panels, figsize=(6.0 * n_panels, 4.5), squeeze=False)
    ax = axes[0][0]
    ax.plot(dev["t"], dev["deviation"], "o-", lw=1.4, ms=3)
    ax.set_xlabel("t")
    ax.set_ylabel("sup deviation from unperturbed run")
    ax.set_yscale("log")
    ax.set_title("perturbation decay")
    ax.grid(alpha=0.3, which="both")
    if args.snapshots:
        ax2 = axes[0][1]
        for path in args.snapshots:
            data = load_columns(path, expected=["x", "u"])
            ax2.plot(data["x"], data["u"], lw=1.2, label=label_from_filename(path, "t", "t"))
        ax2.set_xlabel("x")
        ax2.set_ylabel("u")
        ax2.set_title("perturbed profiles")
        ax2.legend(loc="best", fontsize=8)
        ax2.grid(alpha=0.3)
    fig.tight_layout()
    fig.savefig(args.out, dpi=150)
    plt.close(fig)
    return 0


if __name__ == "__main__":
    raise SystemExit(run_cli(main))
