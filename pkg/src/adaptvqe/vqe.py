"""Inner variational loop: ansatz state preparation, the energy objective,
the analytic reverse-sweep gradient, and a BFGS minimizer.

The ansatz is an ordered product of unitaries acting on a reference state,

    |psi(theta)> = e^{theta_N A_N} ... e^{theta_1 A_1} |ref>,

where each A_k is the qubit image of an anti-Hermitian pool generator.
Two interchangeable backends evaluate it: a full 2^n statevector backend
(the reference semantics) and a sector-compiled sparse backend that solvers
use for speed.  Both are cross-validated in the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .fcidump import MolecularHamiltonian
from .fermion import PoolOperator
from .pauli import PauliOperator, jordan_wigner
from .sector import SectorBasis, compile_operator, expm_multiply_taylor
from .state import StateVector, apply, apply_exp, expectation, hf_state

EXP_TOL = 1e-12
DEFAULT_GTOL = 1e-6
DEFAULT_MAX_ITER = 500


@dataclass(frozen=True)
class Ansatz:
    """Ordered pool-operator ids; op_ids[0] is applied first (rightmost)."""
    op_ids: tuple[int, ...]
    reference_occupied: tuple[int, ...]

    def grown(self, op_id: int) -> "Ansatz":
        """Append an operator to the left end (applied last)."""
        return Ansatz(self.op_ids + (op_id,), self.reference_occupied)

    def __len__(self) -> int:
        return len(self.op_ids)


def jw_pool(pool: Sequence[PoolOperator], n_qubits: int) -> list[PauliOperator]:
    return [jordan_wigner(p.generator, n_qubits) for p in pool]


class FullSpaceBackend:
    """Reference backend on full 2^n statevectors."""

    def __init__(self, h: MolecularHamiltonian, pool: Sequence[PoolOperator],
                 reference_occupied: Sequence[int]):
        self.n_qubits = h.n_qubits
        self.h_qubit = h.qubit
        self.pool_qubit = jw_pool(pool, h.n_qubits)
        self.reference_occupied = tuple(reference_occupied)

    def reference(self) -> np.ndarray:
        return hf_state(self.n_qubits, self.reference_occupied).amplitudes

    def h_mult(self, vec: np.ndarray) -> np.ndarray:
        from .state import _apply_raw
        return _apply_raw(self.h_qubit, vec, self.n_qubits)

    def pool_mult(self, k: int, vec: np.ndarray) -> np.ndarray:
        from .state import _apply_raw
        return _apply_raw(self.pool_qubit[k], vec, self.n_qubits)

    def exp_pool(self, k: int, theta: float, vec: np.ndarray) -> np.ndarray:
        psi = StateVector(self.n_qubits, vec)
        return apply_exp(theta, self.pool_qubit[k], psi, EXP_TOL).amplitudes


class SectorBackend:
    """Sector-compiled sparse backend; numerically equivalent to
    FullSpaceBackend for sector-conserving operators."""

    # exp_pool accepts (dim, m) column blocks, not just single vectors
    supports_batched_exp = True

    def __init__(self, h: MolecularHamiltonian, pool: Sequence[PoolOperator],
                 reference_occupied: Sequence[int]):
        ints = h.integrals
        self.basis = SectorBasis.build(h.n_qubits, ints.n_alpha, ints.n_beta)
        self.h_mat = compile_operator(h.qubit, self.basis)
        pool_q = jw_pool(pool, h.n_qubits)
        self.pool_mats = [compile_operator(q, self.basis) for q in pool_q]
        self.reference_occupied = tuple(reference_occupied)

    def reference(self) -> np.ndarray:
        vec = np.zeros(self.basis.dim, dtype=complex)
        vec[self.basis.index_of(sum(1 << q for q in self.reference_occupied))] = 1.0
        return vec

    def h_mult(self, vec: np.ndarray) -> np.ndarray:
        return self.h_mat @ vec

    def pool_mult(self, k: int, vec: np.ndarray) -> np.ndarray:
        return self.pool_mats[k] @ vec

    def exp_pool(self, k: int, theta: float, vec: np.ndarray) -> np.ndarray:
        return expm_multiply_taylor(self.pool_mats[k], theta, vec, EXP_TOL)


Backend = FullSpaceBackend | SectorBackend


def prepare_vec(backend: Backend, op_ids: Sequence[int],
                theta: Sequence[float]) -> np.ndarray:
    if len(op_ids) != len(theta):
        raise ValueError(
            f"{len(theta)} parameters for {len(op_ids)} operators")
    vec = backend.reference()
    for k, t in zip(op_ids, theta):
        vec = backend.exp_pool(k, float(t), vec)
    return vec


def energy_vec(backend: Backend, vec: np.ndarray) -> float:
    val = complex(np.vdot(vec, backend.h_mult(vec)))
    return val.real


def energy_and_gradient(backend: Backend, op_ids: Sequence[int],
                        theta: np.ndarray) -> tuple[float, np.ndarray]:
    """Joint energy and analytic gradient.

    dE/dtheta_k = 2 Re <sigma_k| A_k |phi_k> with |phi_k> the state after the
    first k factors and |sigma_k> = (U_{k+1}..U_N)^dag H |psi>.  One forward
    sweep builds |psi>, one backward sweep unwinds both vectors, so the cost
    is about two state preparations plus one Hamiltonian application.
    """
    psi = prepare_vec(backend, op_ids, theta)
    sigma = backend.h_mult(psi)
    energy = complex(np.vdot(psi, sigma)).real
    n = len(op_ids)
    grad = np.zeros(n)
    if getattr(backend, "supports_batched_exp", False):
        # unwind |phi> and |sigma> together as one two-column block
        pair = np.stack([psi, sigma], axis=1)
        for k in range(n - 1, -1, -1):
            grad[k] = 2.0 * complex(np.vdot(
                pair[:, 1], backend.pool_mult(op_ids[k], pair[:, 0]))).real
            if k > 0:
                pair = backend.exp_pool(op_ids[k], -float(theta[k]), pair)
        return energy, grad
    phi = psi
    for k in range(n - 1, -1, -1):
        grad[k] = 2.0 * complex(
            np.vdot(sigma, backend.pool_mult(op_ids[k], phi))).real
        if k > 0:
            phi = backend.exp_pool(op_ids[k], -float(theta[k]), phi)
            sigma = backend.exp_pool(op_ids[k], -float(theta[k]), sigma)
    return energy, grad


# --- spec-level operations on full statevectors ---

def prepare_state(ansatz: Ansatz, theta: Sequence[float],
                  h: MolecularHamiltonian,
                  pool: Sequence[PoolOperator]) -> StateVector:
    backend = FullSpaceBackend(h, pool, ansatz.reference_occupied)
    return StateVector(h.n_qubits, prepare_vec(backend, ansatz.op_ids, theta))


def energy(ansatz: Ansatz, theta: Sequence[float], h: MolecularHamiltonian,
           pool: Sequence[PoolOperator]) -> float:
    return expectation(h.qubit, prepare_state(ansatz, theta, h, pool))


def analytic_gradient(ansatz: Ansatz, theta: Sequence[float],
                      h: MolecularHamiltonian,
                      pool: Sequence[PoolOperator]) -> np.ndarray:
    backend = FullSpaceBackend(h, pool, ansatz.reference_occupied)
    _, grad = energy_and_gradient(backend, ansatz.op_ids,
                                  np.asarray(theta, dtype=float))
    return grad


# --- BFGS with strong Wolfe line search ---

@dataclass
class VqeResult:
    energy: float
    theta: np.ndarray
    n_iterations: int
    n_energy_evals: int
    n_gradient_evals: int
    converged: bool
    termination: str  # "converged" | "max_iter" | "line_search_failure"
    parameter_count: int = 0

    def __post_init__(self):
        if not self.parameter_count:
            self.parameter_count = len(self.theta)


class LineSearchError(RuntimeError):
    pass


def _cubic_step(a_lo, f_lo, d_lo, a_hi, f_hi) -> float:
    # minimizer of the cubic through (a_lo, f_lo, d_lo) and (a_hi, f_hi);
    # falls back to bisection when degenerate
    da = a_hi - a_lo
    if da == 0:
        return a_lo
    b = (f_hi - f_lo - d_lo * da) / (da * da)
    if b <= 0 or not np.isfinite(b):
        return 0.5 * (a_lo + a_hi)
    step = a_lo - d_lo / (2.0 * b)
    lo, hi = min(a_lo, a_hi), max(a_lo, a_hi)
    span = hi - lo
    if not np.isfinite(step) or step < lo + 0.1 * span or step > hi - 0.1 * span:
        return 0.5 * (a_lo + a_hi)
    return step


def _wolfe_line_search(fg, x, p, f0, g0, c1=1e-4, c2=0.9, max_evals=25):
    """Strong Wolfe line search (bracket then zoom).

    Returns (alpha, f, g, n_evals); raises LineSearchError if no acceptable
    step is found.
    """
    dphi0 = float(g0 @ p)
    if dphi0 >= 0:
        raise LineSearchError("search direction is not a descent direction")
    evals = 0

    def phi(alpha):
        nonlocal evals
        evals += 1
        f, g = fg(x + alpha * p)
        return f, g, float(g @ p)

    def zoom(a_lo, f_lo, d_lo, a_hi, f_hi):
        nonlocal evals
        for _ in range(max_evals):
            a = _cubic_step(a_lo, f_lo, d_lo, a_hi, f_hi)
            f, g, d = phi(a)
            if f > f0 + c1 * a * dphi0 or f >= f_lo:
                a_hi, f_hi = a, f
            else:
                if abs(d) <= -c2 * dphi0:
                    return a, f, g
                if d * (a_hi - a_lo) >= 0:
                    a_hi, f_hi = a_lo, f_lo
                a_lo, f_lo, d_lo = a, f, d
            if abs(a_hi - a_lo) < 1e-16:
                break
        raise LineSearchError("zoom failed to satisfy the Wolfe conditions")

    a_prev, f_prev, d_prev = 0.0, f0, dphi0
    a = 1.0
    for i in range(max_evals):
        f, g, d = phi(a)
        if f > f0 + c1 * a * dphi0 or (i > 0 and f >= f_prev):
            res = zoom(a_prev, f_prev, d_prev, a, f)
            return (*res, evals)
        if abs(d) <= -c2 * dphi0:
            return a, f, g, evals
        if d >= 0:
            res = zoom(a, f, d, a_prev, f_prev)
            return (*res, evals)
        a_prev, f_prev, d_prev = a, f, d
        a *= 2.0
    raise LineSearchError("bracketing exceeded the evaluation budget")


def bfgs_minimize(fg: Callable[[np.ndarray], tuple[float, np.ndarray]],
                  theta0: np.ndarray,
                  gtol: float = DEFAULT_GTOL,
                  max_iter: int = DEFAULT_MAX_ITER) -> VqeResult:
    """Dense-inverse-Hessian BFGS; line search satisfies the strong Wolfe
    conditions (c1=1e-4, c2=0.9).  Deterministic: no randomness anywhere.

    Converged means ||grad||_inf <= gtol.  The returned point is the best
    one evaluated, so the result never exceeds f(theta0).
    """
    if gtol <= 0:
        raise ValueError("gtol must be positive")
    x = np.asarray(theta0, dtype=float).copy()
    n = len(x)
    n_evals = 0

    best: dict = {}

    def tracked_fg(xx):
        nonlocal n_evals
        n_evals += 1
        f, g = fg(xx)
        if not best or f < best["f"]:
            best.update(f=f, x=xx.copy(), g=g.copy())
        return f, g

    f, g = tracked_fg(x)
    if n == 0:
        return VqeResult(f, x, 0, n_evals, n_evals, True, "converged")
    h_inv = np.eye(n)
    termination = "max_iter"
    converged = False
    iteration = 0
    while iteration < max_iter:
        if np.max(np.abs(g)) <= gtol:
            converged, termination = True, "converged"
            break
        p = -h_inv @ g
        try:
            alpha, f_new, g_new, _ = _wolfe_line_search(tracked_fg, x, p, f, g)
        except LineSearchError:
            termination = "line_search_failure"
            break
        s = alpha * p
        y = g_new - g
        sy = float(s @ y)
        if sy > 1e-14 * np.linalg.norm(s) * np.linalg.norm(y):
            rho = 1.0 / sy
            v = np.eye(n) - rho * np.outer(s, y)
            h_inv = v @ h_inv @ v.T + rho * np.outer(s, s)
        x = x + s
        f, g = f_new, g_new
        iteration += 1
    else:
        if np.max(np.abs(g)) <= gtol:
            converged, termination = True, "converged"

    if best and best["f"] < f:
        f, x, g = best["f"], best["x"], best["g"]
        converged = bool(np.max(np.abs(g)) <= gtol)
        if converged:
            termination = "converged"
    return VqeResult(energy=f, theta=x, n_iterations=iteration,
                     n_energy_evals=n_evals, n_gradient_evals=n_evals,
                     converged=converged, termination=termination)


def optimize_ansatz(backend: Backend, op_ids: Sequence[int],
                    theta0: np.ndarray, gtol: float = DEFAULT_GTOL,
                    max_iter: int = DEFAULT_MAX_ITER) -> VqeResult:
    def fg(theta):
        return energy_and_gradient(backend, op_ids, theta)
    return bfgs_minimize(fg, theta0, gtol=gtol, max_iter=max_iter)
