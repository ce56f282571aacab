"""Particle-number sector basis and sector-compiled sparse operators.

Every operator used by the solvers (the Hamiltonian, all pool generators)
conserves N_alpha and N_beta, so states evolved from the reference never
leave the (n_alpha, n_beta) occupation sector.  Compiling operators to
sparse matrices over that sector turns each 2^n kernel call into a small
matrix-vector product; compilation verifies that nothing leaks outside the
sector.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np
import scipy.sparse as sp

from .pauli import PauliOperator
from .state import EXP_SERIES_CAP, NORM_TOL, StateVector

LEAK_TOL = 1e-12


@dataclass(frozen=True)
class SectorBasis:
    """Ordered basis of bitmasks with fixed alpha/beta occupation counts.

    Alpha spin-orbitals sit on even qubits, beta on odd qubits.
    """
    n_qubits: int
    n_alpha: int
    n_beta: int
    states: np.ndarray  # sorted int64 bitmasks

    @classmethod
    def build(cls, n_qubits: int, n_alpha: int, n_beta: int) -> "SectorBasis":
        alpha_qubits = list(range(0, n_qubits, 2))
        beta_qubits = list(range(1, n_qubits, 2))
        if n_alpha > len(alpha_qubits) or n_beta > len(beta_qubits):
            raise ValueError("sector occupation exceeds orbital count")
        masks = []
        for a_occ in combinations(alpha_qubits, n_alpha):
            a_mask = sum(1 << q for q in a_occ)
            for b_occ in combinations(beta_qubits, n_beta):
                masks.append(a_mask + sum(1 << q for q in b_occ))
        states = np.array(sorted(masks), dtype=np.int64)
        return cls(n_qubits, n_alpha, n_beta, states)

    @property
    def dim(self) -> int:
        return len(self.states)

    def index_of(self, mask: int) -> int:
        pos = int(np.searchsorted(self.states, mask))
        if pos >= self.dim or self.states[pos] != mask:
            raise KeyError(f"basis state {mask:b} not in sector")
        return pos

    def embed(self, vec: np.ndarray) -> StateVector:
        """Sector coefficients -> full 2^n statevector."""
        amps = np.zeros(1 << self.n_qubits, dtype=complex)
        amps[self.states] = vec
        return StateVector(self.n_qubits, amps)

    def project(self, psi: StateVector, leak_tol: float = 1e-10) -> np.ndarray:
        """Full statevector -> sector coefficients; rejects leaked amplitude."""
        vec = psi.amplitudes[self.states]
        leak = np.linalg.norm(psi.amplitudes) ** 2 - np.linalg.norm(vec) ** 2
        if leak > leak_tol:
            raise ValueError(f"state has {leak:.3e} weight outside the sector")
        return vec


def compile_operator(op: PauliOperator, basis: SectorBasis) -> sp.csr_matrix:
    """Restrict a sector-conserving PauliOperator to the sector basis.

    Individual Pauli strings map sector states outside the sector; the
    cancellations happen within groups of strings sharing a flip mask, so
    leakage is checked after summing each group.
    """
    if op.n_qubits != basis.n_qubits:
        raise ValueError("qubit count mismatch")
    states = basis.states
    dim = basis.dim
    groups: dict[int, list[tuple[int, complex]]] = {}
    for s, c in op.terms.items():
        x_mask, zy_mask, n_y = s.masks()
        groups.setdefault(x_mask, []).append((zy_mask, c * (1j ** n_y)))

    cols_all, rows_all, vals_all = [], [], []
    cols = np.arange(dim)
    for x_mask, members in groups.items():
        w = np.zeros(dim, dtype=complex)
        for zy_mask, c in members:
            parity = np.bitwise_count(states & np.int64(zy_mask)) & 1
            w += c * (1.0 - 2.0 * parity)
        targets = states ^ np.int64(x_mask)
        pos = np.searchsorted(states, targets)
        pos_clipped = np.minimum(pos, dim - 1)
        inside = states[pos_clipped] == targets
        leaked = np.abs(w[~inside])
        if leaked.size and leaked.max() > LEAK_TOL:
            raise ValueError(
                f"operator leaks {leaked.max():.3e} outside the "
                f"({basis.n_alpha},{basis.n_beta}) sector")
        keep = inside & (np.abs(w) > 0)
        rows_all.append(pos_clipped[keep])
        cols_all.append(cols[keep])
        vals_all.append(w[keep])

    if not rows_all:
        return sp.csr_matrix((dim, dim), dtype=complex)
    mat = sp.coo_matrix(
        (np.concatenate(vals_all),
         (np.concatenate(rows_all), np.concatenate(cols_all))),
        shape=(dim, dim), dtype=complex)
    return mat.tocsr()


def expm_multiply_taylor(mat: sp.csr_matrix, theta: float, vec: np.ndarray,
                         tol: float = 1e-12) -> np.ndarray:
    """e^{theta*mat} vec by truncated Taylor series (mat anti-Hermitian)."""
    if theta == 0.0 or mat.nnz == 0:
        return vec.copy()
    ref_norm = np.linalg.norm(vec)
    total = vec.copy()
    term = vec
    for k in range(1, EXP_SERIES_CAP + 1):
        term = (theta / k) * (mat @ term)
        total += term
        if np.linalg.norm(term) < tol * ref_norm:
            break
    else:
        raise RuntimeError(
            f"exponential series did not converge within {EXP_SERIES_CAP} terms")
    out_norm = np.linalg.norm(total)
    if abs(out_norm - ref_norm) > NORM_TOL:
        total *= ref_norm / out_norm
    return total
