"""Sparse Pauli-string operators and the Jordan-Wigner transform.

A PauliString stores only its non-identity letters, sorted by qubit index.
Strings are the literal tensor products of {I, X, Y, Z}, so a PauliOperator
is Hermitian exactly when all its coefficients are real.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .fermion import FermionOperator

PRUNE_TOL = 1e-12

_MAT = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}

# Single-qubit products: (left, right) -> (phase, letter)
_PROD: dict[tuple[str, str], tuple[complex, str]] = {}
for _a in "IXYZ":
    _PROD[("I", _a)] = (1.0, _a)
    _PROD[(_a, "I")] = (1.0, _a)
    _PROD[(_a, _a)] = (1.0, "I")
_PROD[("X", "Y")] = (1j, "Z")
_PROD[("Y", "X")] = (-1j, "Z")
_PROD[("Y", "Z")] = (1j, "X")
_PROD[("Z", "Y")] = (-1j, "X")
_PROD[("Z", "X")] = (1j, "Y")
_PROD[("X", "Z")] = (-1j, "Y")


@dataclass(frozen=True)
class PauliString:
    """Non-identity letters as a sorted ((qubit, letter), ...) tuple."""
    letters: tuple[tuple[int, str], ...]

    def __post_init__(self):
        if any(l not in "XYZ" for _, l in self.letters):
            raise ValueError(f"invalid Pauli letters in {self.letters}")
        if list(self.letters) != sorted(self.letters):
            object.__setattr__(self, "letters", tuple(sorted(self.letters)))

    @property
    def weight(self) -> int:
        return len(self.letters)

    def masks(self) -> tuple[int, int, int]:
        """(x_mask, zy_mask, n_y): bit masks of flipped qubits, of phase-carrying
        qubits (Y or Z), and the Y count."""
        x = zy = ny = 0
        for q, l in self.letters:
            if l in "XY":
                x |= 1 << q
            if l in "YZ":
                zy |= 1 << q
            if l == "Y":
                ny += 1
        return x, zy, ny

    def __str__(self) -> str:
        if not self.letters:
            return "I"
        return " ".join(f"{l}{q}" for q, l in self.letters)


IDENTITY_STRING = PauliString(())


def _string_product(a: PauliString, b: PauliString) -> tuple[complex, PauliString]:
    phase: complex = 1.0
    out: list[tuple[int, str]] = []
    ia, ib = 0, 0
    la, lb = a.letters, b.letters
    while ia < len(la) and ib < len(lb):
        qa, ca = la[ia]
        qb, cb = lb[ib]
        if qa < qb:
            out.append(la[ia]); ia += 1
        elif qb < qa:
            out.append(lb[ib]); ib += 1
        else:
            ph, c = _PROD[(ca, cb)]
            phase *= ph
            if c != "I":
                out.append((qa, c))
            ia += 1; ib += 1
    out.extend(la[ia:])
    out.extend(lb[ib:])
    return phase, PauliString(tuple(out))


class PauliOperator:
    """Sparse map from PauliString to complex coefficient on n_qubits."""

    __slots__ = ("n_qubits", "terms")

    def __init__(self, n_qubits: int,
                 terms: dict[PauliString, complex] | None = None,
                 *, prune: bool = True):
        self.n_qubits = n_qubits
        terms = dict(terms) if terms else {}
        for s in terms:
            if s.letters and s.letters[-1][0] >= n_qubits:
                raise ValueError(f"string {s} exceeds {n_qubits} qubits")
        if prune:
            terms = {s: c for s, c in terms.items() if abs(c) > PRUNE_TOL}
        self.terms = terms

    @classmethod
    def zero(cls, n_qubits: int) -> "PauliOperator":
        return cls(n_qubits, {})

    @classmethod
    def identity(cls, n_qubits: int, coeff: complex = 1.0) -> "PauliOperator":
        return cls(n_qubits, {IDENTITY_STRING: coeff})

    def __len__(self) -> int:
        return len(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def _check_dims(self, other: "PauliOperator"):
        if self.n_qubits != other.n_qubits:
            raise ValueError(
                f"qubit count mismatch: {self.n_qubits} vs {other.n_qubits}")

    def __add__(self, other: "PauliOperator") -> "PauliOperator":
        self._check_dims(other)
        out = dict(self.terms)
        for s, c in other.terms.items():
            out[s] = out.get(s, 0.0) + c
        return PauliOperator(self.n_qubits, out)

    def __sub__(self, other: "PauliOperator") -> "PauliOperator":
        return self + (other * -1.0)

    def __mul__(self, scalar: complex) -> "PauliOperator":
        return PauliOperator(
            self.n_qubits, {s: c * scalar for s, c in self.terms.items()},
            prune=False)

    __rmul__ = __mul__

    def __matmul__(self, other: "PauliOperator") -> "PauliOperator":
        return pauli_product(self, other)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PauliOperator):
            return NotImplemented
        if self.n_qubits != other.n_qubits:
            return False
        keys = set(self.terms) | set(other.terms)
        return all(abs(self.terms.get(s, 0.0) - other.terms.get(s, 0.0)) <= 1e-10
                   for s in keys)

    def __hash__(self):  # pragma: no cover
        raise TypeError("PauliOperator is not hashable")

    def dagger(self) -> "PauliOperator":
        return PauliOperator(
            self.n_qubits, {s: c.conjugate() for s, c in self.terms.items()},
            prune=False)

    def is_hermitian(self, tol: float = 1e-10) -> bool:
        return all(abs(c.imag) <= tol for c in self.terms.values())

    def is_antihermitian(self, tol: float = 1e-10) -> bool:
        return all(abs(c.real) <= tol for c in self.terms.values())

    def real_part(self) -> "PauliOperator":
        return PauliOperator(
            self.n_qubits, {s: complex(c.real) for s, c in self.terms.items()})

    def to_matrix(self) -> np.ndarray:
        """Dense matrix; qubit 0 is the least-significant basis-index bit."""
        dim = 1 << self.n_qubits
        out = np.zeros((dim, dim), dtype=complex)
        for s, c in self.terms.items():
            letters = dict(s.letters)
            m = np.array([[c]])
            for q in range(self.n_qubits):
                m = np.kron(_MAT[letters.get(q, "I")], m)
            out += m
        return out

    def to_text(self) -> str:
        """One term per line: '(<re>,<im>) <letter><index>...'."""
        lines = []
        for s in sorted(self.terms, key=lambda s: s.letters):
            c = self.terms[s]
            lines.append(f"({c.real:.12g},{c.imag:.12g}) {s}")
        return "\n".join(lines)

    @classmethod
    def from_text(cls, text: str, n_qubits: int) -> "PauliOperator":
        terms: dict[PauliString, complex] = {}
        for line in text.splitlines():
            line = line.strip()
            if not line:
                continue
            coeff_part, _, rest = line.partition(") ")
            re_s, im_s = coeff_part.lstrip("(").split(",")
            letters = []
            for tok in rest.split():
                if tok == "I":
                    continue
                letters.append((int(tok[1:]), tok[0]))
            s = PauliString(tuple(letters))
            terms[s] = terms.get(s, 0.0) + complex(float(re_s), float(im_s))
        return cls(n_qubits, terms)


def pauli_product(a: PauliOperator, b: PauliOperator) -> PauliOperator:
    a._check_dims(b)
    out: dict[PauliString, complex] = {}
    for sa, ca in a.terms.items():
        for sb, cb in b.terms.items():
            phase, s = _string_product(sa, sb)
            c = ca * cb * phase
            if s in out:
                out[s] += c
            else:
                out[s] = c
    return PauliOperator(a.n_qubits, out)


def commutator(a: PauliOperator, b: PauliOperator) -> PauliOperator:
    """ab - ba; coefficients of commuting strings cancel algebraically."""
    a._check_dims(b)
    out: dict[PauliString, complex] = {}
    for sa, ca in a.terms.items():
        for sb, cb in b.terms.items():
            phase, s = _string_product(sa, sb)
            phase_r, _ = _string_product(sb, sa)
            c = ca * cb * (phase - phase_r)
            if c != 0:
                out[s] = out.get(s, 0.0) + c
    return PauliOperator(a.n_qubits, out)


@lru_cache(maxsize=None)
def _ladder_image(index: int, kind: int) -> PauliOperator:
    """JW image of a_p (kind 0) or a^dag_p (kind 1): the Z string sits on all
    qubits strictly below p."""
    z_tail = tuple((q, "Z") for q in range(index))
    x_str = PauliString(z_tail + ((index, "X"),))
    y_str = PauliString(z_tail + ((index, "Y"),))
    sign = -1j if kind else 1j
    return PauliOperator(index + 1, {x_str: 0.5, y_str: 0.5 * sign})


def jordan_wigner(op: FermionOperator, n_spin_orbitals: int) -> PauliOperator:
    """Linear, product-preserving map from ladder products to Pauli strings."""
    if op.max_index() >= n_spin_orbitals:
        raise ValueError(
            f"operator touches index {op.max_index()} but only "
            f"{n_spin_orbitals} spin-orbitals declared")
    total: dict[PauliString, complex] = {}
    for ops, coeff in op.terms.items():
        partial: dict[PauliString, complex] = {IDENTITY_STRING: coeff}
        for idx, kind in ops:
            image = _ladder_image(idx, kind)
            nxt: dict[PauliString, complex] = {}
            for sa, ca in partial.items():
                for sb, cb in image.terms.items():
                    phase, s = _string_product(sa, sb)
                    c = ca * cb * phase
                    if s in nxt:
                        nxt[s] += c
                    else:
                        nxt[s] = c
            partial = nxt
        for s, c in partial.items():
            total[s] = total.get(s, 0.0) + c
    return PauliOperator(n_spin_orbitals, total)
