"""Restricted Hartree-Fock with DIIS, and the AO->MO integral transform."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .basis import ATOMIC_NUMBER, build_basis
from .integrals import eri_tensor, one_electron_matrices

ANGSTROM_TO_BOHR = 1.0 / 0.529177210903

E_CONV = 1e-10
D_CONV = 1e-8
MAX_SCF_ITER = 300
DIIS_DEPTH = 8


class ScfError(RuntimeError):
    pass


@dataclass
class ScfResult:
    e_total: float
    e_nuc: float
    mo_coeff: np.ndarray        # columns are MOs, ascending orbital energy
    mo_energies: np.ndarray
    h_core: np.ndarray          # AO basis
    eri_ao: np.ndarray          # AO basis, chemist (ij|kl)
    n_elec: int
    density: np.ndarray | None = None  # AO density, reusable as an SCF guess


def nuclear_repulsion(charges, coords) -> float:
    e = 0.0
    for i in range(len(charges)):
        for j in range(i):
            e += charges[i] * charges[j] / np.linalg.norm(coords[i] - coords[j])
    return e


def _fix_mo_signs(c: np.ndarray) -> np.ndarray:
    # deterministic orbital phases: largest-|coefficient| entry positive
    for k in range(c.shape[1]):
        idx = int(np.argmax(np.abs(c[:, k])))
        if c[idx, k] < 0:
            c[:, k] = -c[:, k]
    return c


def run_rhf(symbols: list[str], coords_angstrom: np.ndarray,
            d_init: np.ndarray | None = None) -> ScfResult:
    """Converge RHF and return the lowest-energy converged solution across
    a ladder of virtual-orbital level shifts (stretched geometries admit
    multiple SCF solutions and plain DIIS can oscillate or land high).
    The level shift only alters the iteration path; every converged density
    satisfies the unshifted equations.  `d_init` (an AO density from a
    nearby geometry) is tried as an extra starting guess.
    """
    attempts: list[ScfResult] = []
    last_exc: ScfError | None = None
    guesses = [None] if d_init is None else [d_init, None]
    for guess in guesses:
        for level_shift in (0.0, 0.5, 2.0):
            try:
                attempts.append(_run_rhf(symbols, coords_angstrom,
                                         level_shift, guess))
            except ScfError as exc:
                last_exc = exc
    if not attempts:
        raise last_exc
    return min(attempts, key=lambda res: res.e_total)


def _run_rhf(symbols: list[str], coords_angstrom: np.ndarray,
             level_shift: float, d_init: np.ndarray | None = None) -> ScfResult:
    coords = np.asarray(coords_angstrom, dtype=float) * ANGSTROM_TO_BOHR
    charges = [ATOMIC_NUMBER[s] for s in symbols]
    n_elec = sum(charges)
    if n_elec % 2:
        raise ScfError("restricted HF needs an even electron count")
    n_occ = n_elec // 2

    funcs = build_basis(symbols, coords)
    s, t, v = one_electron_matrices(funcs, charges, coords)
    h = t + v
    eri = eri_tensor(funcs)
    e_nuc = nuclear_repulsion(charges, coords)

    # symmetric orthogonalization
    s_val, s_vec = np.linalg.eigh(s)
    if s_val.min() < 1e-8:
        raise ScfError(f"near-singular overlap (min eigenvalue {s_val.min():.3e})")
    x = s_vec @ np.diag(s_val ** -0.5) @ s_vec.T

    def density(c):
        cocc = c[:, :n_occ]
        return 2.0 * cocc @ cocc.T

    def fock(d):
        j = np.einsum("pqrs,rs->pq", eri, d)
        k = np.einsum("prqs,rs->pq", eri, d)
        return h + j - 0.5 * k

    def scf_energy(d, f):
        return 0.5 * np.einsum("pq,pq->", d, h + f) + e_nuc

    if d_init is not None and d_init.shape == h.shape:
        d = d_init.copy()
        # derive orbitals consistent with the guess density
        _, c_prime = np.linalg.eigh(x.T @ fock(d) @ x)
        c = _fix_mo_signs(x @ c_prime)
    else:
        # core-Hamiltonian guess
        _, c_prime = np.linalg.eigh(x.T @ h @ x)
        c = _fix_mo_signs(x @ c_prime)
        d = density(c)
    e_old = 0.0
    diis_f: list[np.ndarray] = []
    diis_r: list[np.ndarray] = []

    for _ in range(MAX_SCF_ITER):
        f = fock(d)
        resid = f @ d @ s - s @ d @ f
        diis_f.append(f)
        diis_r.append(resid)
        if len(diis_f) > DIIS_DEPTH:
            diis_f.pop(0)
            diis_r.pop(0)
        if len(diis_f) > 1:
            m = len(diis_f)
            b = -np.ones((m + 1, m + 1))
            b[m, m] = 0.0
            for i in range(m):
                for j in range(m):
                    b[i, j] = np.einsum("pq,pq->", diis_r[i], diis_r[j])
            rhs = np.zeros(m + 1)
            rhs[m] = -1.0
            try:
                w = np.linalg.solve(b, rhs)[:m]
                f = sum(wi * fi for wi, fi in zip(w, diis_f))
            except np.linalg.LinAlgError:
                pass  # fall back to the undamped Fock matrix
        f_ortho = x.T @ f @ x
        if level_shift:
            # raise the virtual space by level_shift using the previous
            # occupied projector; vanishes at self-consistency
            c_ortho = np.linalg.solve(x, c)
            p_occ = c_ortho[:, :n_occ] @ c_ortho[:, :n_occ].T
            f_ortho = f_ortho + level_shift * (np.eye(len(f)) - p_occ)
        eps, c_prime = np.linalg.eigh(f_ortho)
        c = _fix_mo_signs(x @ c_prime)
        d = density(c)
        e_new = scf_energy(d, fock(d))
        err = float(np.max(np.abs(resid)))
        if abs(e_new - e_old) < E_CONV and err < D_CONV:
            if level_shift:
                # one clean unshifted diagonalization for canonical orbitals
                eps, c_prime = np.linalg.eigh(x.T @ fock(d) @ x)
                c = _fix_mo_signs(x @ c_prime)
            return ScfResult(e_total=float(e_new), e_nuc=e_nuc, mo_coeff=c,
                             mo_energies=eps, h_core=h, eri_ao=eri,
                             n_elec=n_elec, density=d)
        e_old = e_new
    raise ScfError(f"SCF did not converge in {MAX_SCF_ITER} iterations "
                   f"(dE={abs(e_new - e_old):.3e}, resid={err:.3e})")


def mo_integrals(res: ScfResult) -> tuple[np.ndarray, np.ndarray]:
    """(h_mo, eri_mo) in the canonical MO basis, chemist notation."""
    c = res.mo_coeff
    h_mo = c.T @ res.h_core @ c
    eri_mo = np.einsum("pqrs,pi,qj,rk,sl->ijkl", res.eri_ao, c, c, c, c,
                       optimize=True)
    return h_mo, eri_mo
