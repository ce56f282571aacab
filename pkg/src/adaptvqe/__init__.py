"""Classical simulation engine for adaptive-ansatz variational quantum
eigensolvers, with FCI, Hartree-Fock, and UCCSD baselines."""

from .adapt import AdaptResult, GrowthKind, GrowthStrategy, run_adapt
from .fcidump import (MolecularHamiltonian, MolecularIntegrals,
                      build_hamiltonian, load_hamiltonian, parse_fcidump,
                      write_fcidump)
from .fermion import (FermionOperator, PoolOperator, PoolRestriction,
                      build_pool, make_excitation_generator, spin_complement)
from .harness import KCAL_PER_HARTREE, ScanSpec, run_ordering_comparison, run_scan
from .pauli import PauliOperator, PauliString, commutator, jordan_wigner
from .reference import fci_ground_energy, hf_energy, uccsd_vqe
from .state import StateVector, apply, apply_exp, expectation, hf_state
from .vqe import Ansatz, VqeResult, analytic_gradient, bfgs_minimize, energy, prepare_state

__version__ = "0.1.0"

__all__ = [
    "AdaptResult", "GrowthKind", "GrowthStrategy", "run_adapt",
    "MolecularHamiltonian", "MolecularIntegrals", "build_hamiltonian",
    "load_hamiltonian", "parse_fcidump", "write_fcidump",
    "FermionOperator", "PoolOperator", "PoolRestriction", "build_pool",
    "make_excitation_generator", "spin_complement",
    "KCAL_PER_HARTREE", "ScanSpec", "run_ordering_comparison", "run_scan",
    "PauliOperator", "PauliString", "commutator", "jordan_wigner",
    "fci_ground_energy", "hf_energy", "uccsd_vqe",
    "StateVector", "apply", "apply_exp", "expectation", "hf_state",
    "Ansatz", "VqeResult", "analytic_gradient", "bfgs_minimize", "energy",
    "prepare_state",
]
