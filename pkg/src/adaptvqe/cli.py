"""Command-line interface.

Subcommands: fci, hf, uccsd, adapt, scan, orderings, print-hamiltonian.
Exit codes: 0 success, 2 parse/config error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .adapt import DEFAULT_MAX_OPS, GrowthKind, GrowthStrategy, run_adapt, save_run
from .fcidump import FcidumpError, load_hamiltonian
from .harness import (KCAL_PER_HARTREE, ScanSpec, generalized_pool,
                      run_ordering_comparison, run_scan, summarize,
                      write_ordering_outputs, write_rows)
from .reference import (fci_ground_energy, hf_energy, restricted_pool,
                        uccsd_vqe)
from .state import SectorInfo

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="adaptvqe",
        description="Adaptive-ansatz VQE simulation engine")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_fcidump(p):
        p.add_argument("--fcidump", required=True, help="FCIDUMP input path")

    p = sub.add_parser("fci", help="sector-restricted exact ground energy")
    add_fcidump(p)
    p.add_argument("--nalpha", type=int, default=None)
    p.add_argument("--nbeta", type=int, default=None)

    p = sub.add_parser("hf", help="Hartree-Fock reference energy")
    add_fcidump(p)

    p = sub.add_parser("uccsd", help="single-exponential UCCSD energy")
    add_fcidump(p)

    p = sub.add_parser("adapt", help="adaptive ansatz growth run")
    add_fcidump(p)
    p.add_argument("--epsilon", type=float, required=True,
                   help="pool-gradient L2 norm exit threshold")
    p.add_argument("--strategy", default="adapt",
                   choices=[k.value for k in GrowthKind])
    p.add_argument("--seed", type=int, default=None,
                   help="RNG seed (random strategies)")
    p.add_argument("--max-ops", type=int, default=DEFAULT_MAX_OPS)
    p.add_argument("--json", dest="json_out", default=None,
                   help="write the full run artifact to this path")

    p = sub.add_parser("scan", help="geometry scan from a JSON spec")
    p.add_argument("--spec", required=True)
    p.add_argument("--out", required=True, help="output directory")

    p = sub.add_parser("orderings", help="growth-ordering comparison")
    add_fcidump(p)
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--max-ops", type=int, default=40)
    p.add_argument("--seeds", default="0,1,2",
                   help="comma-separated seeds for random strategies")

    p = sub.add_parser("print-hamiltonian",
                       help="qubit Hamiltonian, one Pauli term per line")
    add_fcidump(p)
    return parser


def _cmd_fci(args) -> int:
    h = load_hamiltonian(args.fcidump)
    sector = None
    if (args.nalpha is None) != (args.nbeta is None):
        raise ValueError("--nalpha and --nbeta must be given together")
    if args.nalpha is not None:
        sector = SectorInfo(args.nalpha, args.nbeta)
    energy = fci_ground_energy(h, sector)
    print(f"fci_energy {energy:.12f}")
    return EXIT_OK


def _cmd_hf(args) -> int:
    h = load_hamiltonian(args.fcidump)
    print(f"hf_energy {hf_energy(h):.12f}")
    return EXIT_OK


def _cmd_uccsd(args) -> int:
    h = load_hamiltonian(args.fcidump)
    res = uccsd_vqe(h)
    print(f"uccsd_energy {res.energy:.12f}")
    print(f"parameter_count {res.parameter_count}")
    print(f"converged {res.converged}")
    if res.termination == "line_search_failure":
        raise RuntimeError("line search failed")
    return EXIT_OK


def _cmd_adapt(args) -> int:
    h = load_hamiltonian(args.fcidump)
    kind = GrowthKind(args.strategy)
    strategy = GrowthStrategy(kind, args.seed)
    pool = (restricted_pool(h) if kind.value.endswith("ijab")
            else generalized_pool(h))
    res = run_adapt(h, pool, h.hf_occupied(), args.epsilon,
                    strategy=strategy, max_ops=args.max_ops)
    e_fci = fci_ground_energy(h)
    print(f"adapt_energy {res.energy:.12f}")
    print(f"fci_energy {e_fci:.12f}")
    print(f"error_kcal {(res.energy - e_fci) * KCAL_PER_HARTREE:.6f}")
    print(f"n_operators {res.n_operators}")
    print(f"termination {res.termination}")
    print(f"final_gradient_norm {res.final_gradient_norm:.3e}")
    if args.json_out:
        config = {"fcidump": args.fcidump, "epsilon": args.epsilon,
                  "strategy": args.strategy, "seed": args.seed,
                  "max_ops": args.max_ops}
        save_run(args.json_out, res, pool, config)
    return EXIT_OK


def _cmd_scan(args) -> int:
    spec = ScanSpec.from_json(args.spec)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    rows, summary = run_scan(spec)
    write_rows(out / "scan.csv", rows)
    with open(out / "summary.json", "w") as fh:
        json.dump(summary, fh, indent=2)
        fh.write("\n")
    failures = [r for r in rows if r.status != "ok"]
    for row in failures:
        print(f"failed: {row.molecule} r={row.geometry} {row.method}: "
              f"{row.status}", file=sys.stderr)
    print(f"wrote {len(rows)} rows to {out / 'scan.csv'}")
    return EXIT_NUMERICAL if failures else EXIT_OK


def _cmd_orderings(args) -> int:
    h = load_hamiltonian(args.fcidump)
    seeds = [int(s) for s in args.seeds.split(",") if s]
    comparison = run_ordering_comparison(h, max_ops=args.max_ops, seeds=seeds)
    write_ordering_outputs(args.out, comparison)
    print(f"wrote trajectories to {Path(args.out) / 'orderings.json'}")
    return EXIT_OK


def _cmd_print_hamiltonian(args) -> int:
    h = load_hamiltonian(args.fcidump)
    print(h.qubit.to_text())
    return EXIT_OK


_COMMANDS = {
    "fci": _cmd_fci,
    "hf": _cmd_hf,
    "uccsd": _cmd_uccsd,
    "adapt": _cmd_adapt,
    "scan": _cmd_scan,
    "orderings": _cmd_orderings,
    "print-hamiltonian": _cmd_print_hamiltonian,
}


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (FcidumpError, FileNotFoundError, IsADirectoryError,
            json.JSONDecodeError, KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (RuntimeError, AssertionError, ArithmeticError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
