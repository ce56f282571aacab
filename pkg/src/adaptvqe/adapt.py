"""Adaptive ansatz growth: the outer loop that measures pool gradients,
selects one operator per iteration, grows the ansatz, and re-optimizes.

Growth strategies: gradient-based selection (argmax |g_i|), seeded random
draws from the pool, and the pool's deterministic build order ("lexical").
The loop exits when the L2 norm of the pool-gradient vector drops below the
threshold epsilon; the pool is never drained, so operators can repeat.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

import numpy as np

from .fcidump import MolecularHamiltonian
from .fermion import PoolOperator
from .pauli import PauliOperator
from .state import StateVector, apply
from .vqe import (Ansatz, Backend, FullSpaceBackend, SectorBackend,
                  DEFAULT_GTOL, DEFAULT_MAX_ITER, optimize_ansatz,
                  prepare_vec)

DEFAULT_MAX_OPS = 200
STALL_TOL = 1e-12
STALL_PATIENCE = 3
GRAD_IMAG_TOL = 1e-9


class GrowthKind(Enum):
    ADAPT_MAX_GRADIENT = "adapt"
    RANDOM_IJAB = "random-ijab"
    RANDOM_PQRS = "random-pqrs"
    LEXICAL_IJAB = "lexical-ijab"
    LEXICAL_PQRS = "lexical-pqrs"


@dataclass(frozen=True)
class GrowthStrategy:
    kind: GrowthKind
    rng_seed: int | None = None

    def __post_init__(self):
        random = self.kind in (GrowthKind.RANDOM_IJAB, GrowthKind.RANDOM_PQRS)
        if random and self.rng_seed is None:
            raise ValueError(f"{self.kind.value} requires rng_seed")

    @property
    def is_random(self) -> bool:
        return self.kind in (GrowthKind.RANDOM_IJAB, GrowthKind.RANDOM_PQRS)

    @property
    def is_lexical(self) -> bool:
        return self.kind in (GrowthKind.LEXICAL_IJAB, GrowthKind.LEXICAL_PQRS)


@dataclass
class IterationRecord:
    iteration: int
    chosen_op_id: int
    chosen_op_label: str
    pool_gradient_norm: float
    selected_gradient_value: float
    optimized_energy: float
    parameter_count: int


@dataclass
class AdaptResult:
    history: list[IterationRecord]
    ansatz: Ansatz
    theta: np.ndarray
    energy: float
    termination: str  # "gradient_converged" | "max_iter" | "stalled"
    final_gradient_norm: float
    n_energy_evals: int = 0
    wall_time: float = 0.0

    @property
    def n_operators(self) -> int:
        return len(self.ansatz)

    def to_json_dict(self, pool: Sequence[PoolOperator] | None = None,
                     config: dict | None = None) -> dict:
        labels = {p.id: p.label for p in pool} if pool else {}
        return {
            "config": config or {},
            "energy": self.energy,
            "termination": self.termination,
            "final_gradient_norm": self.final_gradient_norm,
            "n_operators": self.n_operators,
            "n_energy_evals": self.n_energy_evals,
            "wall_time": self.wall_time,
            "ansatz": [
                {"op_id": op_id, "label": labels.get(op_id, ""),
                 "theta": float(t)}
                for op_id, t in zip(self.ansatz.op_ids, self.theta)
            ],
            "reference_occupied": list(self.ansatz.reference_occupied),
            "history": [vars(rec) for rec in self.history],
        }


def pool_gradients(psi: StateVector, h: MolecularHamiltonian,
                   pool: Sequence[PoolOperator],
                   pool_qubit: Sequence[PauliOperator] | None = None
                   ) -> np.ndarray:
    """g_i = <psi|[H, A_i]|psi>, the energy derivative of a candidate
    operator at theta=0.  Evaluated as <H psi|A_i psi> - <psi|A_i (H psi)>
    without forming the commutator operator; a residual imaginary part
    signals an anti-Hermiticity bug.
    """
    from .pauli import jordan_wigner
    if pool_qubit is None:
        pool_qubit = [jordan_wigner(p.generator, h.n_qubits) for p in pool]
    h_psi = apply(h.qubit, psi)
    out = np.zeros(len(pool))
    for i, a in enumerate(pool_qubit):
        a_psi = apply(a, psi)
        val = h_psi.inner(a_psi) - psi.inner(apply(a, h_psi))
        if abs(val.imag) > GRAD_IMAG_TOL:
            raise ValueError(
                f"pool gradient {i} has imaginary part {val.imag:.3e}; "
                "generator is not anti-Hermitian")
        out[i] = val.real
    return out


def _backend_pool_gradients(backend: Backend, vec: np.ndarray) -> np.ndarray:
    h_vec = backend.h_mult(vec)
    n = len(backend.pool_mats) if isinstance(backend, SectorBackend) \
        else len(backend.pool_qubit)
    out = np.zeros(n)
    for i in range(n):
        a_vec = backend.pool_mult(i, vec)
        val = complex(np.vdot(h_vec, a_vec) - np.vdot(vec, backend.pool_mult(i, h_vec)))
        if abs(val.imag) > GRAD_IMAG_TOL:
            raise ValueError(
                f"pool gradient {i} has imaginary part {val.imag:.3e}")
        out[i] = val.real
    return out


def select_operator(gradients: np.ndarray, strategy: GrowthStrategy,
                    pool: Sequence[PoolOperator], *, step: int = 0,
                    rng: np.random.Generator | None = None) -> int:
    """Pick the next pool-operator id.

    adapt: argmax |g_i| with ties broken by the lowest id.  random: uniform
    seeded draw.  lexical: pool member number `step` in build order, wrapping
    after exhaustion.
    """
    if not len(pool):
        raise ValueError("empty operator pool")
    if strategy.kind is GrowthKind.ADAPT_MAX_GRADIENT:
        if len(gradients) != len(pool):
            raise ValueError("gradient vector length does not match the pool")
        return int(np.argmax(np.abs(gradients)))
    if strategy.is_random:
        if rng is None:
            rng = np.random.default_rng(strategy.rng_seed)
        return int(pool[rng.integers(len(pool))].id)
    return int(pool[step % len(pool)].id)


def run_adapt(h: MolecularHamiltonian, pool: Sequence[PoolOperator],
              reference_occupied: Sequence[int], epsilon: float,
              strategy: GrowthStrategy = GrowthStrategy(GrowthKind.ADAPT_MAX_GRADIENT),
              max_ops: int = DEFAULT_MAX_OPS,
              inner_gtol: float = DEFAULT_GTOL,
              inner_max_iter: int = DEFAULT_MAX_ITER,
              use_sector: bool = True,
              initial_state: np.ndarray | None = None,
              stall_patience: int | None = STALL_PATIENCE) -> AdaptResult:
    """The adaptive outer loop.

    Per iteration: prepare the current state, measure all pool gradients,
    exit if ||g||_2 < epsilon, otherwise grow the ansatz per the strategy
    (new parameter starts at 0, operator appended to the left end, i.e.
    applied last) and re-optimize every parameter.

    `initial_state` (sector coefficients when use_sector, else full
    amplitudes) replaces the reference for testing fixed points.
    `stall_patience=None` disables the flat-energy abort, letting runs
    (e.g. fixed-ordering baselines) continue to max_ops regardless of
    progress.
    """
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    t_start = time.perf_counter()
    backend_cls = SectorBackend if use_sector else FullSpaceBackend
    backend = backend_cls(h, pool, reference_occupied)
    if initial_state is not None:
        ref = np.asarray(initial_state, dtype=complex)
        backend.reference = lambda: ref.copy()

    rng = np.random.default_rng(strategy.rng_seed) if strategy.is_random else None
    op_ids: list[int] = []
    theta = np.zeros(0)
    history: list[IterationRecord] = []
    n_evals = 0
    energy_now = None
    termination = "max_iter"
    grad_norm = float("inf")
    stall_count = 0

    while True:
        vec = prepare_vec(backend, op_ids, theta)
        if energy_now is None:
            energy_now = float(np.vdot(vec, backend.h_mult(vec)).real)
        grads = _backend_pool_gradients(backend, vec)
        grad_norm = float(np.linalg.norm(grads))
        if grad_norm < epsilon:
            termination = "gradient_converged"
            break
        if len(op_ids) >= max_ops:
            termination = "max_iter"
            break
        chosen = select_operator(grads, strategy, pool,
                                 step=len(op_ids), rng=rng)
        op_ids.append(chosen)
        theta = np.concatenate([theta, [0.0]])
        res = optimize_ansatz(backend, op_ids, theta,
                              gtol=inner_gtol, max_iter=inner_max_iter)
        n_evals += res.n_energy_evals
        theta = res.theta
        if res.energy > energy_now + 1e-12:
            raise AssertionError(
                "outer-loop energy increased: "
                f"{energy_now:.12f} -> {res.energy:.12f}")
        if energy_now - res.energy < STALL_TOL:
            stall_count += 1
        else:
            stall_count = 0
        energy_now = res.energy
        history.append(IterationRecord(
            iteration=len(history) + 1,
            chosen_op_id=chosen,
            chosen_op_label=pool[chosen].label,
            pool_gradient_norm=grad_norm,
            selected_gradient_value=float(grads[chosen]),
            optimized_energy=energy_now,
            parameter_count=len(op_ids)))
        if stall_patience is not None and stall_count >= stall_patience:
            # energy flat while the gradient norm stays above epsilon;
            # report it rather than looping to max_ops
            vec = prepare_vec(backend, op_ids, theta)
            grad_norm = float(np.linalg.norm(_backend_pool_gradients(backend, vec)))
            termination = "gradient_converged" if grad_norm < epsilon else "stalled"
            break

    ansatz = Ansatz(tuple(op_ids), tuple(reference_occupied))
    return AdaptResult(history=history, ansatz=ansatz, theta=theta,
                       energy=float(energy_now), termination=termination,
                       final_gradient_norm=grad_norm,
                       n_energy_evals=n_evals,
                       wall_time=time.perf_counter() - t_start)


def save_run(path, result: AdaptResult, pool: Sequence[PoolOperator],
             config: dict | None = None) -> None:
    with open(path, "w") as fh:
        json.dump(result.to_json_dict(pool, config), fh, indent=2)
        fh.write("\n")
