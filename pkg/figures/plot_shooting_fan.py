"""Fan of local wave-ODE solutions phi(xi) for several speeds c."""

from __future__ import annotations

import argparse

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from csvread import label_from_filename, load_columns, run_cli


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("profiles", nargs="+", help="profile_c<speed>.csv files")
    parser.add_argument("--out", required=True)
    parser.add_argument("--kappa", type=float, default=1.0, help="positive equilibrium")
    parser.add_argument("--title", default="shooting profiles")
    args = parser.parse_args(argv)

    fig, ax = plt.subplots(figsize=(6.5, 4.5))
    for path in args.profiles:
        data = load_columns(path, expected=["xi", "phi"])
        ax.plot(data["xi"], data["phi"], lw=1.2, label=label_from_filename(path, "c", "c"))
    ax.axhline(args.kappa, color="k", lw=0.8, ls="--")
    ax.set_xlabel("xi")
    ax.set_ylabel("phi")
    ax.set_ylim(0, 1.35 * args.kappa)
    ax.set_title(args.title)
    ax.legend(loc="best", fontsize=8)
    ax.grid(alpha=0.3)
    fig.tight_layout()
    fig.savefig(args.out, dpi=150)
    plt.close(fig)
    return 0


if __name__ == "__main__":
    raise SystemExit(run_cli(main))
