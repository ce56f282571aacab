"""Scan driver and growth-ordering comparison: runs baselines and adaptive
solvers over geometry grids and emits CSV rows plus JSON summaries for
plotting."""

from __future__ import annotations

import csv
import json
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np

from .adapt import DEFAULT_MAX_OPS, GrowthKind, GrowthStrategy, run_adapt
from .fcidump import MolecularHamiltonian, load_hamiltonian
from .fermion import PoolOperator, PoolRestriction, build_pool
from .reference import (fci_ground_energy, hf_energy, restricted_pool,
                        uccsd_vqe)

KCAL_PER_HARTREE = 627.509474

CSV_FIELDS = ["molecule", "geometry", "method", "energy", "error_vs_fci",
              "parameter_count", "outer_iterations", "wall_time", "status"]


@dataclass
class ScanRow:
    molecule: str
    geometry: float
    method: str
    energy: float
    error_vs_fci: float  # kcal/mol
    parameter_count: int
    outer_iterations: int
    wall_time: float
    status: str = "ok"


@dataclass
class ScanSpec:
    molecule: str
    geometries: list[tuple[float, str]]  # (bond length in angstrom, fcidump path)
    methods: list[str]                   # subset of {"hf", "fci", "uccsd", "adapt"}
    epsilons: list[float] = field(default_factory=list)
    max_ops: int = DEFAULT_MAX_OPS
    output_dir: str = "."

    KNOWN_METHODS = ("hf", "fci", "uccsd", "adapt")

    @classmethod
    def from_json(cls, path) -> "ScanSpec":
        with open(path) as fh:
            doc = json.load(fh)
        base = Path(path).parent
        geometries = [(float(g["r"]), str(base / g["fcidump"]))
                      for g in doc["geometries"]]
        return cls(molecule=doc["molecule"], geometries=geometries,
                   methods=list(doc.get("methods", ["hf", "fci"])),
                   epsilons=[float(e) for e in doc.get("epsilons", [])],
                   max_ops=int(doc.get("max_ops", DEFAULT_MAX_OPS)),
                   output_dir=str(doc.get("output_dir", ".")))

    def validate(self) -> None:
        for m in self.methods:
            if m not in self.KNOWN_METHODS:
                raise ValueError(f"unknown method {m!r}")
        if "adapt" in self.methods and not self.epsilons:
            raise ValueError("method 'adapt' requires a non-empty epsilon list")
        from .fcidump import parse_fcidump
        for _, path in self.geometries:
            with open(path) as fh:  # fail fast before any computation
                parse_fcidump(fh.read())


def generalized_pool(h: MolecularHamiltonian) -> list[PoolOperator]:
    return build_pool(h.integrals.n_orb, PoolRestriction.GENERALIZED_PQRS)


def _method_plan(spec: ScanSpec) -> list[tuple[str, str, float | None]]:
    """(method column label, kind, epsilon) in execution order."""
    plan = []
    for m in spec.methods:
        if m == "adapt":
            for eps in spec.epsilons:
                plan.append((f"adapt({eps:g})", "adapt", eps))
        else:
            plan.append((m, m, None))
    return plan


def run_scan(spec: ScanSpec) -> tuple[list[ScanRow], dict]:
    spec.validate()
    rows: list[ScanRow] = []
    plan = _method_plan(spec)
    for r, path in spec.geometries:
        h = load_hamiltonian(path)
        e_fci = fci_ground_energy(h)
        gen_pool = None
        for label, kind, eps in plan:
            t0 = time.perf_counter()
            status = "ok"
            energy = float("nan")
            n_params = 0
            n_outer = 0
            try:
                if kind == "fci":
                    energy = e_fci
                elif kind == "hf":
                    energy = hf_energy(h)
                elif kind == "uccsd":
                    res = uccsd_vqe(h)
                    energy, n_params = res.energy, res.parameter_count
                elif kind == "adapt":
                    if gen_pool is None:
                        gen_pool = generalized_pool(h)
                    res = run_adapt(h, gen_pool, h.hf_occupied(), eps,
                                    max_ops=spec.max_ops)
                    energy = res.energy
                    n_params = res.n_operators
                    n_outer = len(res.history)
            except Exception as exc:  # record and continue the scan
                status = f"{type(exc).__name__}: {exc}"
            err = (energy - e_fci) * KCAL_PER_HARTREE
            rows.append(ScanRow(molecule=spec.molecule, geometry=r,
                                method=label, energy=energy,
                                error_vs_fci=err,
                                parameter_count=n_params,
                                outer_iterations=n_outer,
                                wall_time=time.perf_counter() - t0,
                                status=status))
    summary = summarize(rows)
    return rows, summary


def summarize(rows: Sequence[ScanRow]) -> dict:
    """PES-averaged absolute error and max parameter count per method."""
    by_method: dict[str, list[ScanRow]] = {}
    for row in rows:
        if row.status == "ok":
            by_method.setdefault(row.method, []).append(row)
    return {
        method: {
            "mean_abs_error_kcal": float(np.mean([abs(r.error_vs_fci)
                                                  for r in group])),
            "max_abs_error_kcal": float(np.max([abs(r.error_vs_fci)
                                                for r in group])),
            "max_parameter_count": max(r.parameter_count for r in group),
            "n_geometries": len(group),
        }
        for method, group in by_method.items()
    }


def write_rows(path, rows: Sequence[ScanRow]) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=CSV_FIELDS)
        writer.writeheader()
        for row in rows:
            writer.writerow(vars(row))


def read_rows(path) -> list[ScanRow]:
    out = []
    with open(path, newline="") as fh:
        for rec in csv.DictReader(fh):
            out.append(ScanRow(
                molecule=rec["molecule"], geometry=float(rec["geometry"]),
                method=rec["method"], energy=float(rec["energy"]),
                error_vs_fci=float(rec["error_vs_fci"]),
                parameter_count=int(rec["parameter_count"]),
                outer_iterations=int(rec["outer_iterations"]),
                wall_time=float(rec["wall_time"]), status=rec["status"]))
    return out


# --- growth-ordering comparison ---

ORDERING_STRATEGIES = ("adapt", "random-ijab", "random-pqrs",
                       "lexical-ijab", "lexical-pqrs")
TINY_EPSILON = 1e-12  # ordering runs go to the operator budget, not to convergence


def _strategy_pool(kind: GrowthKind, h: MolecularHamiltonian,
                   pools: dict) -> list[PoolOperator]:
    key = "ijab" if kind.value.endswith("ijab") else "pqrs"
    if key not in pools:
        pools[key] = (restricted_pool(h) if key == "ijab"
                      else generalized_pool(h))
    return pools[key]


def run_ordering_comparison(h: MolecularHamiltonian, max_ops: int,
                            seeds: Sequence[int] = (0, 1, 2),
                            strategies: Sequence[str] = ORDERING_STRATEGIES,
                            inner_max_iter: int = 500) -> dict:
    """Energy-vs-parameter-count trajectories for each growth strategy, plus
    the single UCCSD point.  Random strategies run once per seed."""
    pools: dict[str, list[PoolOperator]] = {}
    trajectories: dict[str, list[tuple[int, float]]] = {}
    e_hf = hf_energy(h)

    def run_one(label, strategy):
        pool = _strategy_pool(strategy.kind, h, pools)
        res = run_adapt(h, pool, h.hf_occupied(), TINY_EPSILON,
                        strategy=strategy, max_ops=max_ops,
                        inner_max_iter=inner_max_iter,
                        stall_patience=None)
        traj = [(0, e_hf)] + [(rec.parameter_count, rec.optimized_energy)
                              for rec in res.history]
        trajectories[label] = traj

    for name in strategies:
        kind = GrowthKind(name)
        if kind in (GrowthKind.RANDOM_IJAB, GrowthKind.RANDOM_PQRS):
            for seed in seeds:
                run_one(f"{name}[seed={seed}]", GrowthStrategy(kind, seed))
        else:
            run_one(name, GrowthStrategy(kind))

    uccsd = uccsd_vqe(h)
    return {
        "trajectories": trajectories,
        "uccsd_point": (uccsd.parameter_count, uccsd.energy),
        "fci_energy": fci_ground_energy(h),
        "hf_energy": e_hf,
    }


def write_ordering_outputs(out_dir, comparison: dict) -> None:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    doc = {
        "uccsd_point": list(comparison["uccsd_point"]),
        "fci_energy": comparison["fci_energy"],
        "hf_energy": comparison["hf_energy"],
        "trajectories": {k: [[n, e] for n, e in v]
                         for k, v in comparison["trajectories"].items()},
    }
    with open(out / "orderings.json", "w") as fh:
        json.dump(doc, fh, indent=2)
        fh.write("\n")
    with open(out / "orderings.csv", "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["strategy", "parameter_count", "energy"])
        for label, traj in comparison["trajectories"].items():
            for n, e in traj:
                writer.writerow([label, n, f"{e:.12f}"])
        n, e = comparison["uccsd_point"]
        writer.writerow(["uccsd", n, f"{e:.12f}"])
