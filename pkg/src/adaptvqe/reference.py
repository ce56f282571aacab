"""Baseline and exact solvers: sector-restricted FCI, the Hartree-Fock
energy, the single-exponential (un-Trotterized) UCCSD ansatz, and a
fixed-ordering product ansatz optimizer.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .fcidump import MolecularHamiltonian
from .fermion import PoolOperator, PoolRestriction, build_pool
from .sector import SectorBasis, compile_operator, expm_multiply_taylor
from .state import SectorInfo, expectation, hf_state
from .vqe import (DEFAULT_GTOL, DEFAULT_MAX_ITER, SectorBackend, VqeResult,
                  bfgs_minimize, jw_pool, optimize_ansatz)

FD_STEP = 1e-5


def _default_sector(h: MolecularHamiltonian) -> SectorInfo:
    return SectorInfo(h.integrals.n_alpha, h.integrals.n_beta)


def fci_ground_state(h: MolecularHamiltonian,
                     sector: SectorInfo | None = None
                     ) -> tuple[float, np.ndarray, SectorBasis]:
    """Lowest eigenpair of H restricted to the particle-number sector, by
    dense symmetric diagonalization (sector dimensions are desk-scale)."""
    if sector is None:
        sector = _default_sector(h)
    basis = SectorBasis.build(h.n_qubits, sector.n_alpha, sector.n_beta)
    mat = compile_operator(h.qubit, basis).toarray()
    vals, vecs = np.linalg.eigh(mat)
    return float(vals[0]), vecs[:, 0], basis


def fci_ground_energy(h: MolecularHamiltonian,
                      sector: SectorInfo | None = None) -> float:
    return fci_ground_state(h, sector)[0]


def hf_energy(h: MolecularHamiltonian) -> float:
    """<HF|H|HF>; identical to the empty-ansatz energy."""
    return expectation(h.qubit, hf_state(h.n_qubits, h.hf_occupied()))


def restricted_pool(h: MolecularHamiltonian) -> list[PoolOperator]:
    ints = h.integrals
    if ints.n_alpha != ints.n_beta:
        raise ValueError("restricted pool assumes a closed-shell reference")
    return build_pool(ints.n_orb, PoolRestriction.HF_RESTRICTED_IJAB,
                      n_occ_spatial=ints.n_alpha)


def uccsd_vqe(h: MolecularHamiltonian,
              pool: Sequence[PoolOperator] | None = None,
              gtol: float = DEFAULT_GTOL,
              max_iter: int = DEFAULT_MAX_ITER,
              fd_step: float = FD_STEP) -> VqeResult:
    """|psi(theta)> = exp(sum_k theta_k A_k)|HF> with one exponential of the
    summed generator (order-independent, unlike the product ansatz).

    The gradient is central finite differences; no cheap exact derivative
    exists for the summed exponential.
    """
    if pool is None:
        pool = restricted_pool(h)
    backend = SectorBackend(h, pool, h.hf_occupied())
    mats = backend.pool_mats
    ref = backend.reference()
    h_mat = backend.h_mat
    n = len(mats)
    n_extra = 0

    def summed(theta):
        gen = theta[0] * mats[0]
        for k in range(1, n):
            if theta[k] != 0.0:
                gen = gen + theta[k] * mats[k]
        return gen

    def energy_of(gen):
        psi = expm_multiply_taylor(gen.tocsr(), 1.0, ref)
        return float(np.vdot(psi, h_mat @ psi).real)

    def fg(theta):
        nonlocal n_extra
        gen = summed(theta)
        f = energy_of(gen)
        grad = np.zeros(n)
        for k in range(n):
            delta = fd_step * mats[k]
            e_plus = energy_of(gen + delta)
            e_minus = energy_of(gen - delta)
            grad[k] = (e_plus - e_minus) / (2.0 * fd_step)
            n_extra += 2
        return f, grad

    result = bfgs_minimize(fg, np.zeros(n), gtol=gtol, max_iter=max_iter)
    result.n_energy_evals += n_extra
    result.parameter_count = n
    return result


def trotterized_ansatz_vqe(h: MolecularHamiltonian,
                           op_ids: Sequence[int],
                           pool: Sequence[PoolOperator],
                           theta0: np.ndarray | None = None,
                           gtol: float = DEFAULT_GTOL,
                           max_iter: int = DEFAULT_MAX_ITER) -> VqeResult:
    """Optimize a fixed, externally supplied product ansatz (all parameters
    simultaneously); covers single-pass Trotterized UCC and the lexical
    orderings."""
    backend = SectorBackend(h, pool, h.hf_occupied())
    if theta0 is None:
        theta0 = np.zeros(len(op_ids))
    return optimize_ansatz(backend, list(op_ids), theta0,
                           gtol=gtol, max_iter=max_iter)
