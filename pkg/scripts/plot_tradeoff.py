"""
Plot logic occupation versus latency from a report's _tradeoff.csv extract
"""
import argparse
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import pandas as pd  # noqa: E402


def plot_tradeoff(tradeoff_csv, out_png):
    frame = pd.read_csv(tradeoff_csv)
    fig, ax = plt.subplots(figsize=(7, 5))
    for scheme, group in frame.groupby("scheme", sort=True):
        ax.plot(group["latency_s"], group["logic_cells"], marker="o", linestyle="-", label=scheme)
    ax.set_xscale("log")
    ax.set_xlabel("Latency per pattern (s)")
    ax.set_ylabel("Logic cells (ALMs)")
    ax.set_title("Logic occupation vs latency")
    ax.grid(True, which="both", alpha=0.3)
    ax.legend(title="coding")
    fig.tight_layout()
    fig.savefig(out_png, dpi=150)
    plt.close(fig)
    print(f"Saved plot to {out_png}")


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description=__doc__.strip())
    parser.add_argument("tradeoff_csv")
    parser.add_argument("--out", default=None)
    args = parser.parse_args()
    out = args.out or str(Path(args.tradeoff_csv).with_suffix(".png"))
    plot_tradeoff(args.tradeoff_csv, out)
