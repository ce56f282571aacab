"""Molecule geometries and FCIDUMP output."""

from __future__ import annotations

import numpy as np

from .scf import ScfResult, mo_integrals, run_rhf

ZERO_TOL = 1e-12


def geometry(molecule: str, r: float) -> tuple[list[str], np.ndarray]:
    """Atom symbols and coordinates (angstrom) for a bond length r.

    lih: Li-H diatomic.  beh2: linear symmetric H-Be-H with Be-H = r.
    h6: six hydrogens on a line with equal spacing r.
    """
    molecule = molecule.lower()
    if molecule == "lih":
        return ["Li", "H"], np.array([[0.0, 0.0, 0.0], [0.0, 0.0, r]])
    if molecule == "beh2":
        return (["Be", "H", "H"],
                np.array([[0.0, 0.0, 0.0], [0.0, 0.0, r], [0.0, 0.0, -r]]))
    if molecule == "h6":
        return (["H"] * 6,
                np.array([[0.0, 0.0, k * r] for k in range(6)]))
    raise ValueError(f"unknown molecule {molecule!r}")


def fcidump_text(h_mo: np.ndarray, eri_mo: np.ndarray, e_nuc: float,
                 n_elec: int, ms2: int = 0) -> str:
    m = h_mo.shape[0]
    lines = [f"&FCI NORB={m},NELEC={n_elec},MS2={ms2},",
             " ORBSYM=" + "1," * m,
             " ISYM=1,",
             "&END"]

    def emit(value, i, j, k, l):
        lines.append(f"{value: .16E} {i:3d} {j:3d} {k:3d} {l:3d}")

    for p in range(m):
        for q in range(p + 1):
            for r in range(p + 1):
                s_max = q if r == p else r
                for s in range(s_max + 1):
                    val = eri_mo[p, q, r, s]
                    if abs(val) > ZERO_TOL:
                        emit(val, p + 1, q + 1, r + 1, s + 1)
    for p in range(m):
        for q in range(p + 1):
            if abs(h_mo[p, q]) > ZERO_TOL:
                emit(h_mo[p, q], p + 1, q + 1, 0, 0)
    emit(e_nuc, 0, 0, 0, 0)
    return "\n".join(lines) + "\n"


def generate_one(molecule: str, r: float,
                 d_init: np.ndarray | None = None) -> tuple[str, ScfResult]:
    """Run RHF for one geometry and return (FCIDUMP text, SCF result).
    `d_init` seeds the SCF from a nearby geometry's density."""
    symbols, coords = geometry(molecule, r)
    res = run_rhf(symbols, coords, d_init=d_init)
    h_mo, eri_mo = mo_integrals(res)
    return fcidump_text(h_mo, eri_mo, res.e_nuc, res.n_elec), res
