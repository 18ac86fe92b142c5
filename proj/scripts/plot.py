#!/usr/bin/env python3
"""plot.py — plot a raman_cli CSV: first column on x, every other column as a line."""

import argparse

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import pandas as pd


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("csv", help="CSV written by raman_cli --out")
    ap.add_argument("-o", "--output", help="image path (default: <csv>.png)")
    ap.add_argument("--logx", action="store_true", help="logarithmic x axis (sweeps)")
    args = ap.parse_args()

    df = pd.read_csv(args.csv, comment="#")
    x = df.columns[0]
    fig, ax = plt.subplots(figsize=(7, 4.5))
    for col in df.columns[1:]:
        ax.plot(df[x], df[col], label=col)
    ax.set_xlabel(x)
    if args.logx:
        ax.set_xscale("log")
    ax.legend(fontsize="small")
    fig.tight_layout()
    fig.savefig(args.output or args.csv + ".png", dpi=150)


if __name__ == "__main__":
    main()
