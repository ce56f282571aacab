"""Exact 2^n statevector kernels: Pauli application, expectation values, and
Taylor-series unitary exponentials.

Basis convention: bit q of the basis index is the occupation of qubit q, so
qubit 0 is the least-significant bit.  Pauli strings act via bit arithmetic
(X/Y flip bits, Y/Z contribute phases); no dense matrices are formed.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from .pauli import PauliOperator

NORM_TOL = 1e-10
EXP_SERIES_CAP = 500


@dataclass(frozen=True)
class SectorInfo:
    """Electron counts of the (N_alpha, N_beta) symmetry sector."""
    n_alpha: int
    n_beta: int


class StateVector:
    """Complex amplitudes over the 2^n computational basis."""

    __slots__ = ("n_qubits", "amplitudes")

    def __init__(self, n_qubits: int, amplitudes: np.ndarray):
        if amplitudes.shape != (1 << n_qubits,):
            raise ValueError(
                f"expected {1 << n_qubits} amplitudes, got {amplitudes.shape}")
        self.n_qubits = n_qubits
        self.amplitudes = np.asarray(amplitudes, dtype=complex)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def inner(self, other: "StateVector") -> complex:
        return complex(np.vdot(self.amplitudes, other.amplitudes))

    def copy(self) -> "StateVector":
        return StateVector(self.n_qubits, self.amplitudes.copy())


def hf_state(n_qubits: int, occupied: Sequence[int]) -> StateVector:
    """Computational basis state with the listed qubits occupied."""
    occ = list(occupied)
    if len(set(occ)) != len(occ):
        raise ValueError(f"duplicate occupied indices: {occ}")
    if any(q < 0 or q >= n_qubits for q in occ):
        raise ValueError(f"occupied index out of range: {occ}")
    amps = np.zeros(1 << n_qubits, dtype=complex)
    amps[sum(1 << q for q in occ)] = 1.0
    return StateVector(n_qubits, amps)


@lru_cache(maxsize=8)
def _parity_table(n_qubits: int) -> np.ndarray:
    """parity_table[i] = popcount(i) mod 2 for i < 2^n."""
    bits = np.arange(1 << n_qubits, dtype=np.uint32)
    return (np.bitwise_count(bits) & 1).astype(np.int8)


def _apply_raw(op: PauliOperator, amps: np.ndarray, n_qubits: int) -> np.ndarray:
    idx = np.arange(1 << n_qubits)
    parity = _parity_table(n_qubits)
    out = np.zeros_like(amps)
    for s, c in op.terms.items():
        x_mask, zy_mask, n_y = s.masks()
        phase = c * (1j ** n_y) * (1.0 - 2.0 * parity[idx & zy_mask])
        if x_mask:
            out[idx ^ x_mask] += phase * amps
        else:
            out += phase * amps
    return out


def apply(op: PauliOperator, psi: StateVector) -> StateVector:
    if op.n_qubits != psi.n_qubits:
        raise ValueError(
            f"qubit count mismatch: {op.n_qubits} vs {psi.n_qubits}")
    return StateVector(psi.n_qubits, _apply_raw(op, psi.amplitudes, psi.n_qubits))


def expectation(op: PauliOperator, psi: StateVector,
                imag_tol: float = 1e-9) -> float:
    """Re<psi|op|psi>; rejects a non-negligible imaginary part, which would
    signal a Hermiticity bug in the operator."""
    val = complex(np.vdot(psi.amplitudes, _apply_raw(op, psi.amplitudes,
                                                     psi.n_qubits)))
    if abs(val.imag) > imag_tol:
        raise ValueError(
            f"expectation has imaginary part {val.imag:.3e}; operator is not "
            "Hermitian on this state")
    return val.real


def apply_exp(theta: float, generator: PauliOperator, psi: StateVector,
              tol: float = 1e-12) -> StateVector:
    """e^{theta*generator} psi by truncated Taylor series.

    The generator must be anti-Hermitian so the result is unitary; norm drift
    beyond NORM_TOL is corrected by renormalization.
    """
    if generator.n_qubits != psi.n_qubits:
        raise ValueError(
            f"qubit count mismatch: {generator.n_qubits} vs {psi.n_qubits}")
    if not generator.is_antihermitian(1e-9):
        raise ValueError("apply_exp requires an anti-Hermitian generator")
    if tol <= 0:
        raise ValueError("tol must be positive")
    amps = psi.amplitudes
    if theta == 0.0 or generator.is_zero():
        return StateVector(psi.n_qubits, amps.copy())
    ref_norm = np.linalg.norm(amps)
    total = amps.copy()
    term = amps
    for k in range(1, EXP_SERIES_CAP + 1):
        term = (theta / k) * _apply_raw(generator, term, psi.n_qubits)
        total += term
        if np.linalg.norm(term) < tol * ref_norm:
            break
    else:
        raise RuntimeError(
            f"exponential series did not converge within {EXP_SERIES_CAP} terms")
    out_norm = np.linalg.norm(total)
    if abs(out_norm - ref_norm) > NORM_TOL:
        total *= ref_norm / out_norm
    return StateVector(psi.n_qubits, total)


def number_expectations(psi: StateVector) -> tuple[float, float]:
    """(<N_alpha>, <N_beta>) with alpha on even and beta on odd qubits."""
    idx = np.arange(1 << psi.n_qubits, dtype=np.uint64)
    alpha_mask = sum(1 << q for q in range(0, psi.n_qubits, 2))
    beta_mask = sum(1 << q for q in range(1, psi.n_qubits, 2))
    weights = np.abs(psi.amplitudes) ** 2
    n_a = float(np.sum(weights * np.bitwise_count(idx & np.uint64(alpha_mask))))
    n_b = float(np.sum(weights * np.bitwise_count(idx & np.uint64(beta_mask))))
    return n_a, n_b
