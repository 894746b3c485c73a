"""Plot wall time against flat problem size from one or more timing.csv files.

usage: python scripts/plot_timing.py results/timing.csv [more.csv ...] -o timing.png
"""
import argparse

import matplotlib.pyplot as plt
import pandas as pd


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("csv", nargs="+")
    ap.add_argument("-o", "--out", default="timing.png")
    args = ap.parse_args()

    fig, ax = plt.subplots(figsize=(6, 4))
    for path in args.csv:
        df = pd.read_csv(path).dropna(subset=["size"])
        df = df.groupby("size", as_index=False)["wall_ms"].median()
        ax.plot(df["size"], df["wall_ms"] / 1e3, marker="o", label=path)
    ax.set_yscale("log")
    ax.set_xlabel("flat size n*k")
    ax.set_ylabel("wall time [s]")
    ax.legend()
    fig.tight_layout()
    fig.savefig(args.out, dpi=150)


if __name__ == "__main__":
    main()
