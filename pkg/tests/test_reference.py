import numpy as np
import pytest

from adaptvqe.fcidump import build_hamiltonian, parse_fcidump
from adaptvqe.reference import (fci_ground_energy, fci_ground_state,
                                hf_energy, restricted_pool,
                                trotterized_ansatz_vqe, uccsd_vqe)
from adaptvqe.state import SectorInfo, expectation, hf_state
from conftest import hamiltonian
from oracles import hf_energy_formula


class TestFci:
    def test_one_orbital_analytic(self):
        text = ("&FCI NORB=1,NELEC=2,MS2=0,&END\n"
                " 0.5 1 1 1 1\n -1.0 1 1 0 0\n 0.7 0 0 0 0\n")
        h = build_hamiltonian(parse_fcidump(text))
        assert fci_ground_energy(h, SectorInfo(1, 1)) \
            == pytest.approx(0.7 - 2.0 + 0.5, abs=1e-12)

    def test_lih_sector_equals_full_space_diagonalization(self, lih):
        e_sector = fci_ground_energy(lih)
        full_eigs = np.linalg.eigvalsh(lih.qubit.to_matrix())  # 4096-dim
        # the sector ground energy must appear in the full spectrum, and no
        # (2,2)-sector state can lie below it
        assert np.min(np.abs(full_eigs - e_sector)) < 1e-10
        from adaptvqe.sector import SectorBasis, compile_operator
        basis = SectorBasis.build(12, 2, 2)
        sector_eigs = np.linalg.eigvalsh(
            compile_operator(lih.qubit, basis).toarray())
        assert e_sector == pytest.approx(sector_eigs[0], abs=1e-12)

    def test_ground_state_is_eigenvector(self, toy_h3):
        e, vec, basis = fci_ground_state(toy_h3)
        from adaptvqe.sector import compile_operator
        mat = compile_operator(toy_h3.qubit, basis)
        assert np.abs(mat @ vec - e * vec).max() < 1e-10


class TestHfEnergy:
    def test_bit_for_bit_same_as_expectation(self, lih):
        direct = expectation(lih.qubit, hf_state(lih.n_qubits, lih.hf_occupied()))
        assert hf_energy(lih) == direct

    def test_matches_integral_formula(self, lih):
        ints = lih.integrals
        assert hf_energy(lih) == pytest.approx(
            hf_energy_formula(ints, ints.n_alpha, ints.n_beta), abs=1e-10)

    def test_strictly_above_fci(self, lih, toy_h2):
        for h in (lih, toy_h2):
            assert hf_energy(h) > fci_ground_energy(h) + 1e-8


class TestUccsd:
    def test_lih_parameter_count_64(self, lih):
        assert len(restricted_pool(lih)) == 64

    def test_toy_improves_on_hf_and_respects_bound(self, toy_h2):
        res = uccsd_vqe(toy_h2)
        assert res.energy < hf_energy(toy_h2)
        assert res.energy >= fci_ground_energy(toy_h2) - 1e-9

    def test_objective_invariant_under_term_permutation(self, toy_h2):
        # single exponential of a summed generator: term order cannot matter
        pool = restricted_pool(toy_h2)
        perm = pool[::-1]
        r1 = uccsd_vqe(toy_h2, pool=pool)
        r2 = uccsd_vqe(toy_h2, pool=perm)
        assert r2.energy == pytest.approx(r1.energy, abs=1e-9)


class TestTrotterizedAnsatz:
    def test_theta_zero_is_hf(self, toy_h2):
        pool = restricted_pool(toy_h2)
        from adaptvqe.vqe import SectorBackend, prepare_vec
        backend = SectorBackend(toy_h2, pool, toy_h2.hf_occupied())
        vec = prepare_vec(backend, [p.id for p in pool],
                          np.zeros(len(pool)))
        e0 = float(np.vdot(vec, backend.h_mult(vec)).real)
        assert e0 == pytest.approx(hf_energy(toy_h2), abs=1e-12)

    def test_optimized_below_hf(self, toy_h2):
        pool = restricted_pool(toy_h2)
        res = trotterized_ansatz_vqe(toy_h2, [p.id for p in pool], pool)
        assert res.energy <= hf_energy(toy_h2) + 1e-12

    def test_single_pass_close_to_uccsd_at_equilibrium(self):
        h = hamiltonian("lih_1.60.fcidump")
        pool = restricted_pool(h)
        r_trot = trotterized_ansatz_vqe(h, [p.id for p in pool], pool)
        r_ucc = uccsd_vqe(h)
        kcal = 627.509474
        assert abs(r_trot.energy - r_ucc.energy) * kcal < 1.0
