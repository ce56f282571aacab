"""Second-quantized fermionic operators and the excitation-operator pool.

Spin-orbital convention: spatial orbital p with alpha spin sits on index 2p,
beta spin on 2p+1 (interleaved).  Operators are stored normal-ordered:
creation operators first (indices descending), then annihilation operators
(indices ascending), with anticommutation signs folded into coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Sequence

PRUNE_TOL = 1e-12

# A ladder operator is (spin_orbital_index, kind); kind 1 = create, 0 = annihilate.
CREATE = 1
ANNIHILATE = 0
LadderOp = tuple[int, int]
LadderKey = tuple[LadderOp, ...]


class Spin(Enum):
    ALPHA = 0
    BETA = 1


def spin_orbital(spatial: int, spin: Spin) -> int:
    if spatial < 0:
        raise ValueError(f"spatial index must be >= 0, got {spatial}")
    return 2 * spatial + spin.value


def flip_spin(index: int) -> int:
    """Alpha <-> beta partner of a spin-orbital index."""
    return index + 1 if index % 2 == 0 else index - 1


def _normal_order_term(ops: LadderKey, coeff: complex) -> dict[LadderKey, complex]:
    """Normal-order a single ladder product, tracking anticommutation signs.

    Swapping a_p a^dag_q produces a delta contraction term when p == q,
    so the result is a sum in general.
    """
    result: dict[LadderKey, complex] = {}
    stack: list[tuple[list[LadderOp], complex]] = [(list(ops), coeff)]
    while stack:
        term, c = stack.pop()
        i = 0
        dead = False
        while i + 1 < len(term):
            (p, kp), (q, kq) = term[i], term[i + 1]
            if kp == ANNIHILATE and kq == CREATE:
                # a_p a^dag_q = delta_pq - a^dag_q a_p
                if p == q:
                    stack.append((term[:i] + term[i + 2:], c))
                term[i], term[i + 1] = term[i + 1], term[i]
                c = -c
                i = max(i - 1, 0)
            elif kp == kq and p == q:
                dead = True  # repeated create or annihilate
                break
            elif kp == kq == CREATE and p < q:
                term[i], term[i + 1] = term[i + 1], term[i]
                c = -c
                i = max(i - 1, 0)
            elif kp == kq == ANNIHILATE and p > q:
                term[i], term[i + 1] = term[i + 1], term[i]
                c = -c
                i = max(i - 1, 0)
            else:
                i += 1
        if not dead:
            key = tuple(term)
            result[key] = result.get(key, 0.0) + c
    return result


class FermionOperator:
    """Sparse sum of normal-ordered ladder-operator products."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict[LadderKey, complex] | None = None,
                 *, _canonical: bool = False):
        if terms is None:
            self.terms: dict[LadderKey, complex] = {}
        elif _canonical:
            self.terms = terms
        else:
            merged: dict[LadderKey, complex] = {}
            for ops, c in terms.items():
                for key, cc in _normal_order_term(tuple(ops), c).items():
                    merged[key] = merged.get(key, 0.0) + cc
            self.terms = {k: v for k, v in merged.items() if abs(v) > PRUNE_TOL}

    @classmethod
    def from_term(cls, ops: Sequence[LadderOp], coeff: complex = 1.0) -> "FermionOperator":
        return cls({tuple(ops): coeff})

    @classmethod
    def zero(cls) -> "FermionOperator":
        return cls({}, _canonical=True)

    @classmethod
    def identity(cls, coeff: complex = 1.0) -> "FermionOperator":
        return cls({(): coeff}, _canonical=True)

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "FermionOperator") -> "FermionOperator":
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0.0) + v
        return FermionOperator(
            {k: v for k, v in out.items() if abs(v) > PRUNE_TOL}, _canonical=True)

    def __sub__(self, other: "FermionOperator") -> "FermionOperator":
        return self + (other * -1.0)

    def __mul__(self, scalar: complex) -> "FermionOperator":
        return FermionOperator(
            {k: v * scalar for k, v in self.terms.items()}, _canonical=True)

    __rmul__ = __mul__

    def __matmul__(self, other: "FermionOperator") -> "FermionOperator":
        """Operator product, renormal-ordered."""
        raw: dict[LadderKey, complex] = {}
        for ka, va in self.terms.items():
            for kb, vb in other.terms.items():
                key = ka + kb
                raw[key] = raw.get(key, 0.0) + va * vb
        return FermionOperator(raw)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FermionOperator):
            return NotImplemented
        keys = set(self.terms) | set(other.terms)
        return all(abs(self.terms.get(k, 0.0) - other.terms.get(k, 0.0)) <= 1e-10
                   for k in keys)

    def __hash__(self):  # pragma: no cover - not hashable by value
        raise TypeError("FermionOperator is not hashable")

    def __repr__(self) -> str:
        if not self.terms:
            return "FermionOperator<0>"
        parts = []
        for ops, c in sorted(self.terms.items()):
            sym = " ".join(f"a{'+' if k == CREATE else ''}_{i}" for i, k in ops) or "1"
            parts.append(f"({c:+.6g}) {sym}")
        return "FermionOperator<" + " ".join(parts) + ">"

    def max_index(self) -> int:
        return max((i for ops in self.terms for i, _ in ops), default=-1)

    def support(self) -> set[int]:
        return {i for ops in self.terms for i, _ in ops}


def hermitian_conjugate(op: FermionOperator) -> FermionOperator:
    """Adjoint: reverse each ladder product, swap create/annihilate, conjugate."""
    raw: dict[LadderKey, complex] = {}
    for ops, c in op.terms.items():
        key = tuple((i, 1 - k) for i, k in reversed(ops))
        raw[key] = raw.get(key, 0.0) + c.conjugate()
    return FermionOperator(raw)


def spin_flip(op: FermionOperator) -> FermionOperator:
    """Flip all alpha <-> beta spin labels."""
    raw: dict[LadderKey, complex] = {}
    for ops, c in op.terms.items():
        key = tuple((flip_spin(i), k) for i, k in ops)
        raw[key] = raw.get(key, 0.0) + c
    return FermionOperator(raw)


def is_antihermitian(op: FermionOperator, tol: float = 1e-10) -> bool:
    diff = hermitian_conjugate(op) + op
    return all(abs(c) <= tol for c in diff.terms.values())


def make_excitation_generator(sources: Sequence[int],
                              targets: Sequence[int]) -> FermionOperator:
    """Anti-Hermitian generator T - T^dag for the excitation sources -> targets.

    T = a^dag_{t1} a^dag_{t2} a_{s2} a_{s1} (or the one-body analogue), unit
    amplitude.  Returns the zero operator when T is Hermitian (e.g. p -> p).
    """
    if len(sources) != len(targets):
        raise ValueError("sources and targets must have equal length")
    if not 1 <= len(sources) <= 2:
        raise ValueError("only one- and two-body excitations are supported")
    if len(set(sources)) != len(sources) or len(set(targets)) != len(targets):
        raise ValueError("sources and targets must each be pairwise distinct")
    ops: list[LadderOp] = [(t, CREATE) for t in targets]
    ops += [(s, ANNIHILATE) for s in reversed(sources)]
    t = FermionOperator.from_term(ops)
    return t - hermitian_conjugate(t)


def spin_complement(gen: FermionOperator) -> FermionOperator:
    """gen + (gen with all spins flipped); gen itself if flipping is identity."""
    flipped = spin_flip(gen)
    if flipped == gen:
        return gen
    return gen + flipped


@dataclass(frozen=True)
class PoolOperator:
    """One pool member: a spin-complemented anti-Hermitian generator."""
    id: int
    generator: FermionOperator
    label: str
    kind: str  # "single" or "double"


class PoolRestriction(Enum):
    GENERALIZED_PQRS = "pqrs"
    HF_RESTRICTED_IJAB = "ijab"


def _orbital_label(so: int) -> str:
    # spatial index, prime marks beta spin
    return f"{so // 2}{'~' if so % 2 else ''}"


def _excitation_label(sources: Sequence[int], targets: Sequence[int]) -> str:
    src = " ".join(_orbital_label(s) for s in sources)
    tgt = " ".join(_orbital_label(t) for t in targets)
    return f"{src} -> {tgt}"


def _signature(op: FermionOperator) -> tuple:
    """Canonical key identifying an operator up to global sign and scale."""
    ref_key = min(op.terms)
    ref = op.terms[ref_key]
    items = []
    for k in sorted(op.terms):
        c = op.terms[k] / ref
        items.append((k, round(c.real, 9), round(c.imag, 9)))
    return tuple(items)


def _mixed_spin(indices: Sequence[int]) -> bool:
    return len({i % 2 for i in indices}) > 1


def build_pool(n_spatial: int, restriction: PoolRestriction,
               n_occ_spatial: int = 0) -> list[PoolOperator]:
    """Deduplicated S_z-conserving singles-and-doubles operator pool.

    Singles come first, then doubles, each block in lexicographic index order;
    this enumeration order doubles as the "lexical" ansatz-growth order.
    Zero generators and duplicates (up to a global sign) are dropped.

    The generalized pool fully spin-complements every generator (an alpha-alpha
    double implies its beta-beta partner inside one pool entry).  The
    HF-restricted pool combines an excitation with its spin flip only for
    mixed-spin doubles, which is the counting that takes the 92 S_z-conserving
    UCCSD amplitudes of a 6-orbital/2-occupied system down to 64 parameters.
    """
    if n_spatial < 1:
        raise ValueError("need at least one spatial orbital")
    if restriction is PoolRestriction.HF_RESTRICTED_IJAB:
        if not 1 <= n_occ_spatial < n_spatial:
            raise ValueError("hf_restricted_ijab needs 1 <= n_occ_spatial < n_spatial")

    pool: list[PoolOperator] = []
    seen: set[tuple] = set()

    def consider(sources, targets, kind, complement):
        gen = make_excitation_generator(sources, targets)
        if complement:
            gen = spin_complement(gen)
        if gen.is_zero():
            return
        sig = _signature(gen)
        if sig in seen:
            return
        seen.add(sig)
        pool.append(PoolOperator(id=len(pool), generator=gen,
                                 label=_excitation_label(sources, targets),
                                 kind=kind))

    n_so = 2 * n_spatial
    if restriction is PoolRestriction.GENERALIZED_PQRS:
        for p in range(n_spatial):
            for q in range(p + 1, n_spatial):
                consider([spin_orbital(p, Spin.ALPHA)],
                         [spin_orbital(q, Spin.ALPHA)], "single", True)
        pairs = [(p, q) for p in range(n_so) for q in range(p + 1, n_so)]
        for s in pairs:
            sz_s = sum(1 - 2 * (x % 2) for x in s)
            for t in pairs:
                if t <= s:
                    continue  # T and T^dag give the same generator
                if sum(1 - 2 * (x % 2) for x in t) != sz_s:
                    continue  # not S_z-conserving
                consider(list(s), list(t), "double", True)
    else:
        occ = list(range(2 * n_occ_spatial))
        virt = list(range(2 * n_occ_spatial, n_so))
        for i in occ:
            for a in virt:
                if i % 2 == a % 2:
                    consider([i], [a], "single", False)
        for i in occ:
            for j in occ:
                if j <= i:
                    continue
                sz_s = (1 - 2 * (i % 2)) + (1 - 2 * (j % 2))
                for a in virt:
                    for b in virt:
                        if b <= a:
                            continue
                        if (1 - 2 * (a % 2)) + (1 - 2 * (b % 2)) != sz_s:
                            continue
                        consider([i, j], [a, b], "double",
                                 _mixed_spin([i, j, a, b]))
    return pool


def number_operator(n_spin_orbitals: int) -> FermionOperator:
    terms = {((i, CREATE), (i, ANNIHILATE)): 1.0 for i in range(n_spin_orbitals)}
    return FermionOperator(terms, _canonical=True)


def sz_operator(n_spin_orbitals: int) -> FermionOperator:
    terms = {((i, CREATE), (i, ANNIHILATE)): 0.5 * (1 - 2 * (i % 2))
             for i in range(n_spin_orbitals)}
    return FermionOperator(terms, _canonical=True)
