import numpy as np
import pytest

from adaptvqe.fcidump import (FcidumpError, build_hamiltonian, parse_fcidump,
                              write_fcidump)
from adaptvqe.fermion import number_operator, sz_operator
from adaptvqe.pauli import commutator, jordan_wigner
from conftest import hamiltonian, toy_integrals

MINIMAL = """&FCI NORB=1,NELEC=2,MS2=0,&END
 0.5 1 1 1 1
 -1.0 1 1 0 0
 0.7 0 0 0 0
"""


class TestParse:
    def test_minimal(self):
        ints = parse_fcidump(MINIMAL)
        assert ints.n_orb == 1 and ints.n_elec == 2 and ints.ms2 == 0
        assert ints.h[0, 0] == -1.0
        assert ints.eri[0, 0, 0, 0] == 0.5
        assert ints.e_nuc == 0.7

    def test_slash_terminator_and_fortran_floats(self):
        text = "&FCI NORB=2,NELEC=2,MS2=0 /\n 1.5D-03 1 1 0 0\n 0.0 0 0 0 0\n"
        ints = parse_fcidump(text)
        assert ints.h[0, 0] == pytest.approx(1.5e-3)

    def test_eightfold_expansion(self):
        text = "&FCI NORB=2,NELEC=2,MS2=0,&END\n 0.25 2 1 2 2\n 0.0 0 0 0 0\n"
        eri = parse_fcidump(text).eri
        for idx in [(1, 0, 1, 1), (0, 1, 1, 1), (1, 1, 1, 0), (1, 1, 0, 1)]:
            assert eri[idx] == 0.25

    def test_h_symmetry(self):
        text = "&FCI NORB=2,NELEC=2,MS2=0,&END\n -0.3 2 1 0 0\n 0.0 0 0 0 0\n"
        h = parse_fcidump(text).h
        assert h[0, 1] == h[1, 0] == -0.3

    def test_duplicate_consistent_ok(self):
        text = ("&FCI NORB=1,NELEC=2,MS2=0,&END\n"
                " -1.0 1 1 0 0\n -1.0 1 1 0 0\n 0.0 0 0 0 0\n")
        assert parse_fcidump(text).h[0, 0] == -1.0

    def test_duplicate_contradiction_rejected(self):
        text = ("&FCI NORB=1,NELEC=2,MS2=0,&END\n"
                " -1.0 1 1 0 0\n -2.0 1 1 0 0\n")
        with pytest.raises(FcidumpError, match="contradictory"):
            parse_fcidump(text)

    def test_index_out_of_range(self):
        with pytest.raises(FcidumpError, match="out of range"):
            parse_fcidump("&FCI NORB=1,NELEC=2,MS2=0,&END\n 1.0 2 1 0 0\n")

    def test_missing_header(self):
        with pytest.raises(FcidumpError, match="header"):
            parse_fcidump("1.0 1 1 0 0\n")

    def test_malformed_line(self):
        with pytest.raises(FcidumpError, match="malformed"):
            parse_fcidump("&FCI NORB=1,NELEC=2,MS2=0,&END\n 1.0 1 1\n")

    def test_orbsym_ignored(self):
        text = ("&FCI NORB=2,NELEC=2,MS2=0,\n ORBSYM=1,1,\n ISYM=1,\n&END\n"
                " 0.1 1 1 0 0\n 0.0 0 0 0 0\n")
        assert parse_fcidump(text).h[0, 0] == 0.1

    def test_round_trip_identical(self):
        ints = toy_integrals(3, 4, seed=11)
        back = parse_fcidump(write_fcidump(ints))
        assert back.n_orb == ints.n_orb and back.n_elec == ints.n_elec
        assert np.abs(back.h - ints.h).max() == 0.0
        assert np.abs(back.eri - ints.eri).max() == 0.0
        assert back.e_nuc == ints.e_nuc


class TestBuildHamiltonian:
    def test_one_orbital_analytic_spectrum(self):
        ints = parse_fcidump(MINIMAL)
        h = build_hamiltonian(ints)
        eigs = np.sort(np.linalg.eigvalsh(h.qubit.to_matrix()))
        e_nuc, h11, g = 0.7, -1.0, 0.5
        expected = np.sort([e_nuc, e_nuc + h11, e_nuc + h11,
                            e_nuc + 2 * h11 + g])
        assert np.abs(eigs - expected).max() < 1e-12

    def test_qubit_hamiltonian_hermitian(self, toy_h2):
        assert toy_h2.qubit.is_hermitian(1e-12)

    def test_commutes_with_number_and_sz(self, toy_h2):
        n = toy_h2.n_qubits
        n_img = jordan_wigner(number_operator(n), n)
        sz_img = jordan_wigner(sz_operator(n), n)
        assert commutator(toy_h2.qubit, n_img).is_zero()
        assert commutator(toy_h2.qubit, sz_img).is_zero()

    def test_hf_occupation_interleaved(self, toy_h2):
        assert toy_h2.hf_occupied() == [0, 1]

    def test_lih_fixture_shape(self):
        h = hamiltonian("lih_2.39.fcidump")
        assert h.integrals.n_orb == 6 and h.integrals.n_elec == 4
        assert h.n_qubits == 12
        assert h.hf_occupied() == [0, 1, 2, 3]

    def test_beh2_fixture_shape(self):
        h = hamiltonian("beh2_2.39.fcidump")
        assert h.integrals.n_orb == 7 and h.integrals.n_elec == 6
        assert h.n_qubits == 14

    def test_h6_fixture_shape(self):
        h = hamiltonian("h6_1.00.fcidump")
        assert h.integrals.n_orb == 6 and h.integrals.n_elec == 6
