"""FCIDUMP ingestion and molecular Hamiltonian assembly.

The FCIDUMP interchange format: a Fortran namelist header
``&FCI NORB=..., NELEC=..., MS2=..., ... &END`` (terminated by ``&END`` or
``/``) followed by ``value i j k l`` lines with 1-based orbital indices.
``i=j=k=l=0`` carries the nuclear repulsion, ``k=l=0`` the one-electron
integral h_ij, and otherwise the chemist-notation two-electron integral
(ij|kl).  Fortran-style ``D`` exponents are accepted.
"""

from __future__ import annotations

import io
import re
from dataclasses import dataclass

import numpy as np

from .fermion import ANNIHILATE, CREATE, FermionOperator, LadderKey
from .pauli import PauliOperator, jordan_wigner


class FcidumpError(ValueError):
    pass


@dataclass
class MolecularIntegrals:
    """Spin-free molecular integrals over M spatial orbitals (Hartree)."""
    n_orb: int
    n_elec: int
    ms2: int
    e_nuc: float
    h: np.ndarray          # (M, M), symmetric
    eri: np.ndarray        # (M, M, M, M), chemist (pq|rs)

    @property
    def n_alpha(self) -> int:
        return (self.n_elec + self.ms2) // 2

    @property
    def n_beta(self) -> int:
        return (self.n_elec - self.ms2) // 2


_EIGHTFOLD = (
    lambda p, q, r, s: (p, q, r, s),
    lambda p, q, r, s: (q, p, r, s),
    lambda p, q, r, s: (p, q, s, r),
    lambda p, q, r, s: (q, p, s, r),
    lambda p, q, r, s: (r, s, p, q),
    lambda p, q, r, s: (s, r, p, q),
    lambda p, q, r, s: (r, s, q, p),
    lambda p, q, r, s: (s, r, q, p),
)


def _parse_header(text: str) -> tuple[dict, int]:
    m = re.search(r"&FCI\b", text, re.IGNORECASE)
    if m is None:
        raise FcidumpError("missing &FCI header")
    end = re.search(r"&END|\$END|(?<![\d.DdEe+\-])/", text[m.end():],
                    re.IGNORECASE)
    if end is None:
        raise FcidumpError("unterminated &FCI header (no &END or /)")
    body = text[m.end():m.end() + end.start()]
    data_start = m.end() + end.end()
    fields: dict[str, str] = {}
    for key, val in re.findall(r"([A-Za-z][A-Za-z0-9_]*)\s*=\s*([^=]*?)(?=[,\s][A-Za-z][A-Za-z0-9_]*\s*=|$)",
                               body, re.DOTALL):
        fields[key.upper()] = val.strip().rstrip(",").strip()
    return fields, data_start


def _fortran_float(tok: str) -> float:
    return float(tok.replace("D", "E").replace("d", "e"))


def parse_fcidump(source: str | bytes | io.IOBase) -> MolecularIntegrals:
    """Parse an FCIDUMP text into fully expanded symmetric integral tables."""
    if isinstance(source, io.IOBase):
        source = source.read()
    if isinstance(source, bytes):
        source = source.decode("ascii")
    fields, data_start = _parse_header(source)
    try:
        n_orb = int(fields["NORB"])
        n_elec = int(fields["NELEC"])
    except KeyError as exc:
        raise FcidumpError(f"header missing required field {exc}") from None
    ms2 = int(fields.get("MS2", "0") or "0")
    if n_orb < 1:
        raise FcidumpError(f"NORB must be >= 1, got {n_orb}")

    e_nuc = 0.0
    h_entries: dict[tuple[int, int], float] = {}
    eri_entries: dict[tuple[int, int, int, int], float] = {}

    def record(store, key, value, label):
        if key in store and abs(store[key] - value) > 1e-10:
            raise FcidumpError(
                f"contradictory duplicate {label} entry {key}: "
                f"{store[key]!r} vs {value!r}")
        store[key] = value

    for lineno, line in enumerate(source[data_start:].splitlines(), start=1):
        toks = line.split()
        if not toks:
            continue
        if len(toks) != 5:
            raise FcidumpError(f"malformed integral line {lineno}: {line!r}")
        value = _fortran_float(toks[0])
        i, j, k, l = (int(t) for t in toks[1:])
        for idx in (i, j, k, l):
            if idx < 0 or idx > n_orb:
                raise FcidumpError(
                    f"index {idx} out of range [0, {n_orb}] on line {lineno}")
        if i == j == k == l == 0:
            e_nuc = value
        elif j == k == l == 0:
            pass  # orbital energy line; not used
        elif k == l == 0:
            if i == 0 or j == 0:
                raise FcidumpError(f"bad one-electron indices on line {lineno}")
            record(h_entries, (max(i, j), min(i, j)), value, "h")
        else:
            if 0 in (i, j, k, l):
                raise FcidumpError(f"bad two-electron indices on line {lineno}")
            key = min(perm(i, j, k, l) for perm in _EIGHTFOLD)
            record(eri_entries, key, value, "(ij|kl)")

    h = np.zeros((n_orb, n_orb))
    for (i, j), v in h_entries.items():
        h[i - 1, j - 1] = h[j - 1, i - 1] = v
    eri = np.zeros((n_orb,) * 4)
    for (i, j, k, l), v in eri_entries.items():
        for perm in _EIGHTFOLD:
            p, q, r, s = perm(i, j, k, l)
            eri[p - 1, q - 1, r - 1, s - 1] = v
    return MolecularIntegrals(n_orb=n_orb, n_elec=n_elec, ms2=ms2,
                              e_nuc=e_nuc, h=h, eri=eri)


def write_fcidump(ints: MolecularIntegrals, zero_tol: float = 0.0) -> str:
    """Serialize integrals back to FCIDUMP text (unique canonical entries)."""
    m = ints.n_orb
    lines = [f"&FCI NORB={m},NELEC={ints.n_elec},MS2={ints.ms2},",
             " ORBSYM=" + "1," * m,
             " ISYM=1,",
             "&END"]

    def emit(value, i, j, k, l):
        lines.append(f"{value: .16E} {i:3d} {j:3d} {k:3d} {l:3d}")

    for p in range(m):
        for q in range(p + 1):
            for r in range(p + 1):
                s_max = q if r == p else r
                for s in range(s_max + 1):
                    v = ints.eri[p, q, r, s]
                    if abs(v) > zero_tol:
                        emit(v, p + 1, q + 1, r + 1, s + 1)
    for p in range(m):
        for q in range(p + 1):
            if abs(ints.h[p, q]) > zero_tol:
                emit(ints.h[p, q], p + 1, q + 1, 0, 0)
    emit(ints.e_nuc, 0, 0, 0, 0)
    return "\n".join(lines) + "\n"


@dataclass
class MolecularHamiltonian:
    """Second-quantized and qubit-space images of a molecular Hamiltonian."""
    integrals: MolecularIntegrals
    fermionic: FermionOperator
    qubit: PauliOperator

    @property
    def n_qubits(self) -> int:
        return 2 * self.integrals.n_orb

    def hf_occupied(self) -> list[int]:
        """Aufbau reference occupation as qubit indices (interleaved spins)."""
        occ = [2 * i for i in range(self.integrals.n_alpha)]
        occ += [2 * i + 1 for i in range(self.integrals.n_beta)]
        return sorted(occ)


def build_fermionic_hamiltonian(ints: MolecularIntegrals) -> FermionOperator:
    """E_nuc + sum h_pq a^dag_p a_q + 1/2 sum (pr|qs) a^dag_p a^dag_q a_s a_r
    over spin-orbitals (alpha on even, beta on odd indices)."""
    m = ints.n_orb
    raw: dict[LadderKey, complex] = {(): complex(ints.e_nuc)}

    def add(key, v):
        raw[key] = raw.get(key, 0.0) + v

    for p in range(m):
        for q in range(m):
            v = ints.h[p, q]
            if abs(v) < 1e-14:
                continue
            for sp in (0, 1):
                add(((2 * p + sp, CREATE), (2 * q + sp, ANNIHILATE)), v)
    for p in range(m):
        for q in range(m):
            for r in range(m):
                for s in range(m):
                    v = 0.5 * ints.eri[p, r, q, s]
                    if abs(v) < 1e-14:
                        continue
                    for sp in (0, 1):
                        for tau in (0, 1):
                            add(((2 * p + sp, CREATE), (2 * q + tau, CREATE),
                                 (2 * s + tau, ANNIHILATE),
                                 (2 * r + sp, ANNIHILATE)), v)
    return FermionOperator(raw)


def build_hamiltonian(ints: MolecularIntegrals) -> MolecularHamiltonian:
    fermionic = build_fermionic_hamiltonian(ints)
    qubit = jordan_wigner(fermionic, 2 * ints.n_orb)
    if not qubit.is_hermitian(1e-9):
        raise AssertionError("qubit Hamiltonian should be Hermitian")
    qubit = qubit.real_part()  # discard numerical-noise imaginary parts
    return MolecularHamiltonian(integrals=ints, fermionic=fermionic,
                                qubit=qubit)


def load_hamiltonian(path) -> MolecularHamiltonian:
    with open(path) as fh:
        return build_hamiltonian(parse_fcidump(fh.read()))
