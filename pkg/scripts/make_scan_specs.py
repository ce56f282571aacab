#!/usr/bin/env python3
"""Writes one scan-spec JSON per molecule, enumerating the committed
fixtures.  The resulting files feed `adaptvqe scan --spec ... --out ...`."""

import argparse
import json
import re
from pathlib import Path

DEFAULTS = {
    "lih": {"methods": ["hf", "fci", "uccsd", "adapt"],
            "epsilons": [0.1, 0.01, 0.001]},
    "beh2": {"methods": ["hf", "fci", "uccsd", "adapt"],
             "epsilons": [0.01, 0.001]},
    "h6": {"methods": ["hf", "fci", "uccsd", "adapt"],
           "epsilons": [0.01, 0.001]},
}


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--fixtures", default="fixtures")
    parser.add_argument("--out", default="scans")
    args = parser.parse_args()

    fixtures = Path(args.fixtures).resolve()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for molecule, extras in DEFAULTS.items():
        geometries = []
        for path in sorted(fixtures.glob(f"{molecule}_*.fcidump")):
            r = float(re.match(rf"{molecule}_([\d.]+)\.fcidump$",
                               path.name).group(1))
            geometries.append({"r": r, "fcidump": str(path)})
        spec = {"molecule": molecule, "geometries": geometries, **extras}
        spec_path = out / f"{molecule}_scan.json"
        spec_path.write_text(json.dumps(spec, indent=2) + "\n")
        print(f"wrote {spec_path} ({len(geometries)} geometries)")


if __name__ == "__main__":
    main()
