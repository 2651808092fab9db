#!/usr/bin/env python3
"""Plot the CSV outputs of the rndop CLI.

Usage:
    python3 docs/plot_results.py PLACE_DIR MC_DIR [FIELD_DIR]

PLACE_DIR must contain rndop_vs_k.csv, MC_DIR error_cdf.csv and timing.csv,
FIELD_DIR (optional) dop_field.csv. Figures are written next to the inputs.
"""

import math
import sys
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import pandas as pd


def plot_rndop_vs_k(place_dir: Path) -> None:
    df = pd.read_csv(place_dir / "rndop_vs_k.csv")
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(df.k, df.achieved_sq_rndop.map(math.sqrt), "o-", label="achieved")
    ax.plot(df.k, df.lb_iter.map(math.sqrt), "--", label="iterative lower")
    ax.plot(df.k, df.ub_iter.map(math.sqrt), "--", label="iterative upper")
    if df.lb_config.notna().all():
        ax.plot(df.k, df.lb_config.map(math.sqrt), ":", label="config-specific lower")
        ax.plot(df.k, df.lb_universal.map(math.sqrt), ":", label="universal lower")
    ax.set_xlabel("total anchors k")
    ax.set_ylabel("worst-case RNDOP [1/m]")
    ax.legend()
    fig.tight_layout()
    fig.savefig(place_dir / "rndop_vs_k.png", dpi=150)


def plot_error_cdf(mc_dir: Path) -> None:
    df = pd.read_csv(mc_dir / "error_cdf.csv")
    fig, ax = plt.subplots(figsize=(6, 4))
    for (method, tag), grp in df.groupby(["method", "config_percentile"]):
        style = "--" if tag == "p10" else "-"
        ax.plot(grp.error_m, grp.cdf, style, label=f"{method} {tag}")
    ax.set_xlabel("positioning error [m]")
    ax.set_ylabel("CDF")
    ax.legend()
    fig.tight_layout()
    fig.savefig(mc_dir / "error_cdf.png", dpi=150)


def plot_timing(mc_dir: Path) -> None:
    df = pd.read_csv(mc_dir / "timing.csv")
    fig, ax = plt.subplots(figsize=(6, 4))
    for method, grp in df.groupby("method"):
        ax.errorbar(grp.N_a, grp.p50_s,
                    yerr=[grp.p50_s - grp.p10_s, grp.p90_s - grp.p50_s],
                    marker="o", capsize=3, label=method)
    ax.set_xlabel("added anchors N_a")
    ax.set_ylabel("execution time [s]")
    ax.set_yscale("log")
    ax.legend()
    fig.tight_layout()
    fig.savefig(mc_dir / "timing.png", dpi=150)


def plot_field(field_dir: Path) -> None:
    df = pd.read_csv(field_dir / "dop_field.csv")
    pivot = df.pivot_table(index="phi", columns="theta", values="rndop")
    fig, ax = plt.subplots(figsize=(6, 4))
    im = ax.pcolormesh(pivot.columns, pivot.index, pivot.values, shading="nearest")
    fig.colorbar(im, ax=ax, label="RNDOP [1/m]")
    ax.set_xlabel("theta [rad]")
    ax.set_ylabel("phi [rad]")
    fig.tight_layout()
    fig.savefig(field_dir / "dop_field.png", dpi=150)


def main() -> None:
    if len(sys.argv) < 3:
        sys.exit(__doc__)
    plot_rndop_vs_k(Path(sys.argv[1]))
    plot_error_cdf(Path(sys.argv[2]))
    plot_timing(Path(sys.argv[2]))
    if len(sys.argv) > 3:
        plot_field(Path(sys.argv[3]))


if __name__ == "__main__":
    main()
