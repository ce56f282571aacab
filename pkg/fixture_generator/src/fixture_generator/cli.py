"""Fixture generation CLI.

    generate_fixtures --molecule lih --grid 0.8:4.0:0.2 --extra 2.39 --out fixtures/

Writes one FCIDUMP per bond length, named <molecule>_<r>.fcidump, plus a
manifest listing the SCF energies.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .scf import ScfError
from .writer import generate_one


def parse_grid(text: str) -> list[float]:
    """start:stop:step, inclusive of stop (within half a step)."""
    try:
        start, stop, step = (float(tok) for tok in text.split(":"))
    except ValueError:
        raise ValueError(f"grid must be start:stop:step, got {text!r}") from None
    if step <= 0 or stop < start:
        raise ValueError(f"bad grid {text!r}")
    n = int(round((stop - start) / step)) + 1
    return [round(start + k * step, 10) for k in range(n)
            if start + k * step <= stop + 0.5 * step]


def format_r(r: float) -> str:
    return f"{r:.2f}".rstrip("0").rstrip(".") if r != round(r, 2) else f"{r:.2f}"


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="generate_fixtures")
    parser.add_argument("--molecule", required=True,
                        choices=["lih", "beh2", "h6"])
    parser.add_argument("--grid", default=None, help="start:stop:step in angstrom")
    parser.add_argument("--extra", default="",
                        help="comma-separated extra bond lengths")
    parser.add_argument("--out", required=True, help="output directory")
    args = parser.parse_args(argv)

    points: list[float] = []
    if args.grid:
        points += parse_grid(args.grid)
    if args.extra:
        points += [float(tok) for tok in args.extra.split(",") if tok]
    if not points:
        parser.error("no geometries: give --grid and/or --extra")
    points = sorted(set(points))

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    manifest = []
    failures = 0
    d_prev = None  # continuation guess from the previous (shorter) geometry
    for r in points:
        name = f"{args.molecule}_{format_r(r)}.fcidump"
        try:
            text, res = generate_one(args.molecule, r, d_init=d_prev)
            d_prev = res.density
        except ScfError as exc:
            print(f"{name}: SCF failed: {exc}", file=sys.stderr)
            failures += 1
            continue
        (out / name).write_text(text)
        manifest.append({"molecule": args.molecule, "r": r, "file": name,
                         "scf_energy": res.e_total, "e_nuc": res.e_nuc,
                         "n_elec": res.n_elec})
        print(f"{name}: E_SCF = {res.e_total:.10f}")
    with open(out / f"{args.molecule}_manifest.json", "w") as fh:
        json.dump(manifest, fh, indent=2)
        fh.write("\n")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
