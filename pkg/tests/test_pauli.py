import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from adaptvqe.fermion import (ANNIHILATE, CREATE, FermionOperator,
                              PoolRestriction, build_pool)
from adaptvqe.pauli import (PauliOperator, PauliString, commutator,
                            jordan_wigner, pauli_product)
from oracles import fermion_matrix, pauli_operator_matrix


def pauli(n_qubits, mapping):
    return PauliOperator(n_qubits, {PauliString(tuple(sorted(s))): c
                                    for s, c in mapping.items()})


class TestJordanWigner:
    def test_create_mode_0(self):
        image = jordan_wigner(FermionOperator.from_term([(0, CREATE)]), 1)
        assert image == pauli(1, {(((0, "X"),)): 0.5, (((0, "Y"),)): -0.5j})

    def test_number_operator_identity(self):
        image = jordan_wigner(
            FermionOperator.from_term([(1, CREATE), (1, ANNIHILATE)]), 2)
        assert image == pauli(2, {(): 0.5, (((1, "Z"),)): -0.5})

    def test_z_string_on_lower_indices(self):
        image = jordan_wigner(FermionOperator.from_term([(2, ANNIHILATE)]), 3)
        expected = pauli(3, {((0, "Z"), (1, "Z"), (2, "X")): 0.5,
                             ((0, "Z"), (1, "Z"), (2, "Y")): 0.5j})
        assert image == expected

    def test_index_out_of_range(self):
        with pytest.raises(ValueError):
            jordan_wigner(FermionOperator.from_term([(3, CREATE)]), 3)

    def test_canonical_anticommutation_relations(self):
        n = 6
        imgs_a = [jordan_wigner(FermionOperator.from_term([(p, ANNIHILATE)]), n)
                  for p in range(n)]
        imgs_c = [jordan_wigner(FermionOperator.from_term([(p, CREATE)]), n)
                  for p in range(n)]
        zero = PauliOperator.zero(n)
        for p in range(n):
            for q in range(n):
                acc = (imgs_a[p] @ imgs_c[q]) + (imgs_c[q] @ imgs_a[p])
                expected = PauliOperator.identity(n) if p == q else zero
                assert acc == expected, (p, q)
                aa = (imgs_a[p] @ imgs_a[q]) + (imgs_a[q] @ imgs_a[p])
                assert aa == zero, (p, q)

    def test_product_homomorphism_vs_dense(self):
        rng = np.random.default_rng(3)
        for trial in range(5):
            terms_a = {}
            terms_b = {}
            for terms in (terms_a, terms_b):
                for _ in range(3):
                    ladder = tuple(
                        (int(rng.integers(4)), int(rng.integers(2)))
                        for _ in range(rng.integers(1, 4)))
                    terms[ladder] = complex(rng.normal(), rng.normal())
            a = FermionOperator(terms_a)
            b = FermionOperator(terms_b)
            lhs = pauli_operator_matrix(jordan_wigner(a @ b, 4))
            rhs = (pauli_operator_matrix(jordan_wigner(a, 4))
                   @ pauli_operator_matrix(jordan_wigner(b, 4)))
            assert np.abs(lhs - rhs).max() < 1e-10

    def test_jw_matches_dense_fermion_oracle(self):
        op = FermionOperator.from_term(
            [(2, CREATE), (3, CREATE), (1, ANNIHILATE), (0, ANNIHILATE)],
            0.7 - 0.2j)
        assert np.abs(pauli_operator_matrix(jordan_wigner(op, 4))
                      - fermion_matrix(op, 4)).max() < 1e-13

    def test_preserves_antihermiticity_of_pool(self):
        for p in build_pool(2, PoolRestriction.GENERALIZED_PQRS):
            image = jordan_wigner(p.generator, 4)
            assert image.is_antihermitian(1e-12), p.label


@st.composite
def pauli_ops(draw, n_qubits=3, max_terms=4):
    terms = {}
    for _ in range(draw(st.integers(1, max_terms))):
        letters = []
        for q in range(n_qubits):
            letter = draw(st.sampled_from("IXYZ"))
            if letter != "I":
                letters.append((q, letter))
        coeff = complex(draw(st.floats(-2, 2)), draw(st.floats(-2, 2)))
        key = PauliString(tuple(letters))
        terms[key] = terms.get(key, 0.0) + coeff
    return PauliOperator(n_qubits, terms)


class TestPauliProduct:
    def test_single_qubit_table(self):
        x = pauli(1, {(((0, "X"),)): 1.0})
        y = pauli(1, {(((0, "Y"),)): 1.0})
        z = pauli(1, {(((0, "Z"),)): 1.0})
        assert x @ y == z * 1j
        assert y @ x == z * -1j

    def test_identity_neutral(self):
        h = pauli(2, {((0, "X"), (1, "Z")): 0.3, (): -0.1})
        assert h @ PauliOperator.identity(2) == h

    def test_xz_times_yx_vs_dense(self):
        a = pauli(2, {((0, "X"), (1, "Z")): 1.0})
        b = pauli(2, {((0, "Y"), (1, "X")): 1.0})
        lhs = pauli_operator_matrix(a @ b)
        rhs = pauli_operator_matrix(a) @ pauli_operator_matrix(b)
        assert np.abs(lhs - rhs).max() < 1e-13

    @settings(max_examples=60, deadline=None)
    @given(pauli_ops(), pauli_ops())
    def test_product_vs_kronecker_oracle(self, a, b):
        lhs = pauli_operator_matrix(pauli_product(a, b))
        rhs = pauli_operator_matrix(a) @ pauli_operator_matrix(b)
        assert np.abs(lhs - rhs).max() < 1e-13

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            pauli_product(PauliOperator.identity(2), PauliOperator.identity(3))


class TestCommutator:
    def test_self_commutator_exactly_zero(self):
        h = pauli(2, {((0, "X"),): 0.3, ((1, "Z"),): -1.2,
                      ((0, "Y"), (1, "Y")): 0.7})
        assert commutator(h, h).is_zero()

    def test_z_with_x(self):
        z = pauli(1, {(((0, "Z"),)): 1.0})
        x = pauli(1, {(((0, "X"),)): 1.0})
        assert commutator(z, x) == pauli(1, {(((0, "Y"),)): 2j})

    @settings(max_examples=60, deadline=None)
    @given(pauli_ops(), pauli_ops())
    def test_commutator_vs_dense(self, a, b):
        lhs = pauli_operator_matrix(commutator(a, b))
        ma, mb = pauli_operator_matrix(a), pauli_operator_matrix(b)
        assert np.abs(lhs - (ma @ mb - mb @ ma)).max() < 1e-13

    @settings(max_examples=40, deadline=None)
    @given(pauli_ops(), pauli_ops())
    def test_hermiticity_classes(self, a, b):
        ha, hb = a.real_part(), b.real_part()  # Hermitian pieces
        assert commutator(ha, hb).is_antihermitian(1e-10)
        anti = hb * 1j
        assert commutator(ha, anti).is_hermitian(1e-10)


class TestTextSerialization:
    def test_format(self):
        h = pauli(2, {((0, "X"), (1, "Z")): 0.5, (): -1.25})
        text = h.to_text()
        assert "(-1.25,0) I" in text.splitlines()[0]
        assert "(0.5,0) X0 Z1" in text

    @settings(max_examples=40, deadline=None)
    @given(pauli_ops())
    def test_round_trip(self, a):
        back = PauliOperator.from_text(a.to_text(), a.n_qubits)
        assert back == a
