import numpy as np
import pytest
from scipy.linalg import expm

from adaptvqe.fermion import PoolRestriction, build_pool
from adaptvqe.pauli import PauliOperator, PauliString, jordan_wigner
from adaptvqe.sector import SectorBasis, compile_operator, expm_multiply_taylor
from adaptvqe.state import StateVector, apply


class TestSectorBasis:
    def test_dimensions(self):
        assert SectorBasis.build(12, 2, 2).dim == 225   # C(6,2)^2
        assert SectorBasis.build(12, 3, 3).dim == 400   # C(6,3)^2
        assert SectorBasis.build(14, 3, 3).dim == 1225  # C(7,3)^2

    def test_states_sorted_and_in_sector(self):
        basis = SectorBasis.build(8, 2, 1)
        assert np.all(np.diff(basis.states) > 0)
        alpha_mask = sum(1 << q for q in range(0, 8, 2))
        for state in basis.states:
            assert bin(int(state) & alpha_mask).count("1") == 2
            assert bin(int(state) & ~alpha_mask).count("1") == 1

    def test_embed_project_round_trip(self):
        basis = SectorBasis.build(6, 1, 1)
        rng = np.random.default_rng(0)
        vec = rng.normal(size=basis.dim) + 1j * rng.normal(size=basis.dim)
        vec /= np.linalg.norm(vec)
        back = basis.project(basis.embed(vec))
        assert np.abs(back - vec).max() == 0.0

    def test_project_rejects_leaked_state(self):
        basis = SectorBasis.build(4, 1, 1)
        amps = np.zeros(16, dtype=complex)
        amps[0] = 1.0  # vacuum, outside the (1,1) sector
        with pytest.raises(ValueError, match="outside"):
            basis.project(StateVector(4, amps))

    def test_occupation_count_validation(self):
        with pytest.raises(ValueError):
            SectorBasis.build(4, 3, 0)


class TestCompileOperator:
    def test_matches_full_space_action(self, toy_h3):
        basis = SectorBasis.build(6, 1, 1)
        mat = compile_operator(toy_h3.qubit, basis)
        rng = np.random.default_rng(1)
        vec = rng.normal(size=basis.dim) + 1j * rng.normal(size=basis.dim)
        full = apply(toy_h3.qubit, basis.embed(vec))
        assert np.abs(basis.project(full) - mat @ vec).max() < 1e-12

    def test_pool_operators_compile(self, toy_h3):
        basis = SectorBasis.build(6, 1, 1)
        for p in build_pool(3, PoolRestriction.GENERALIZED_PQRS)[::5]:
            mat = compile_operator(jordan_wigner(p.generator, 6), basis)
            dense = mat.toarray()
            assert np.abs(dense + dense.conj().T).max() < 1e-12

    def test_leaking_operator_rejected(self):
        basis = SectorBasis.build(4, 1, 1)
        x0 = PauliOperator(4, {PauliString(((0, "X"),)): 1.0})
        with pytest.raises(ValueError, match="leaks"):
            compile_operator(x0, basis)

    def test_qubit_count_mismatch(self):
        basis = SectorBasis.build(4, 1, 1)
        with pytest.raises(ValueError, match="mismatch"):
            compile_operator(PauliOperator.identity(6), basis)


class TestExpmMultiplyTaylor:
    def test_matches_dense_expm(self):
        basis = SectorBasis.build(6, 1, 1)
        pool = build_pool(3, PoolRestriction.GENERALIZED_PQRS)
        rng = np.random.default_rng(2)
        vec = rng.normal(size=basis.dim) + 1j * rng.normal(size=basis.dim)
        vec /= np.linalg.norm(vec)
        for p in pool[::7]:
            mat = compile_operator(jordan_wigner(p.generator, 6), basis)
            lhs = expm_multiply_taylor(mat, 0.63, vec)
            rhs = expm(0.63 * mat.toarray()) @ vec
            assert np.abs(lhs - rhs).max() < 1e-10, p.label

    def test_theta_zero_copies(self):
        basis = SectorBasis.build(4, 1, 1)
        pool = build_pool(2, PoolRestriction.GENERALIZED_PQRS)
        mat = compile_operator(jordan_wigner(pool[0].generator, 4), basis)
        vec = np.ones(basis.dim, dtype=complex)
        out = expm_multiply_taylor(mat, 0.0, vec)
        assert np.abs(out - vec).max() == 0.0
        assert out is not vec
