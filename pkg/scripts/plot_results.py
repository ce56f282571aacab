#!/usr/bin/env python3
"""Plots dissociation curves / error curves from scan.csv files and the
energy-vs-parameter-count trajectories from orderings.csv.

Requires matplotlib (not a package dependency; install separately).
"""

import argparse
import csv
from collections import defaultdict
from pathlib import Path

import matplotlib.pyplot as plt


def plot_scan(scan_csv: Path, out_png: Path):
    by_method = defaultdict(list)
    with open(scan_csv, newline="") as fh:
        for rec in csv.DictReader(fh):
            if rec["status"] != "ok":
                continue
            by_method[rec["method"]].append(
                (float(rec["geometry"]), float(rec["energy"]),
                 float(rec["error_vs_fci"])))

    fig, (ax_e, ax_err) = plt.subplots(1, 2, figsize=(11, 4))
    for method, pts in sorted(by_method.items()):
        pts.sort()
        rs = [p[0] for p in pts]
        ax_e.plot(rs, [p[1] for p in pts], marker=".", label=method)
        if method != "fci":
            ax_err.semilogy(rs, [max(abs(p[2]), 1e-8) for p in pts],
                            marker=".", label=method)
    ax_e.set_xlabel("bond length (angstrom)")
    ax_e.set_ylabel("energy (Hartree)")
    ax_err.set_xlabel("bond length (angstrom)")
    ax_err.set_ylabel("|error vs FCI| (kcal/mol)")
    ax_err.axhline(1.0, color="gray", ls="--", lw=0.8)
    ax_e.legend(fontsize=8)
    ax_err.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(out_png, dpi=150)
    print(f"wrote {out_png}")


def plot_orderings(orderings_csv: Path, out_png: Path):
    trajectories = defaultdict(list)
    uccsd = None
    with open(orderings_csv, newline="") as fh:
        for rec in csv.DictReader(fh):
            point = (int(rec["parameter_count"]), float(rec["energy"]))
            if rec["strategy"] == "uccsd":
                uccsd = point
            else:
                trajectories[rec["strategy"]].append(point)

    fig, ax = plt.subplots(figsize=(6, 4.5))
    for label, pts in sorted(trajectories.items()):
        pts.sort()
        style = "-" if label == "adapt" else "--"
        ax.plot([p[0] for p in pts], [p[1] for p in pts], style,
                label=label, lw=1.8 if label == "adapt" else 1.0)
    if uccsd:
        ax.plot(*uccsd, "ko", label="uccsd")
    ax.set_xlabel("parameter count")
    ax.set_ylabel("energy (Hartree)")
    ax.legend(fontsize=7)
    fig.tight_layout()
    fig.savefig(out_png, dpi=150)
    print(f"wrote {out_png}")


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--results", default="results", type=Path)
    args = parser.parse_args()

    for scan_csv in sorted(args.results.glob("*/scan.csv")):
        plot_scan(scan_csv, scan_csv.parent / "curves.png")
    orderings = args.results / "orderings" / "orderings.csv"
    if orderings.exists():
        plot_orderings(orderings, orderings.parent / "orderings.png")


if __name__ == "__main__":
    main()
