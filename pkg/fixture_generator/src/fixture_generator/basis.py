"""Minimal STO-3G basis: contracted Cartesian Gaussians for H, Li, Be.

Exponents and contraction coefficients are the standard STO-3G values; the
1s and 2sp contraction coefficients are element-independent in this basis.
Primitives are normalized individually and the contracted function is
renormalized by its self-overlap.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import pi, sqrt

import numpy as np

# (lx, ly, lz) per angular momentum shell
CARTESIANS = {
    0: [(0, 0, 0)],
    1: [(1, 0, 0), (0, 1, 0), (0, 0, 1)],
}

# 1s contraction (all elements)
S1_COEFS = (0.15432897, 0.53532814, 0.44463454)
# 2sp contraction (all elements)
SP2_S_COEFS = (-0.09996722919, 0.3995128261, 0.7001154689)
SP2_P_COEFS = (0.155916275, 0.6076837186, 0.3919573931)

# element -> list of (shell kind, exponents)
STO3G = {
    "H": [("1s", (3.42525091, 0.62391373, 0.16885540))],
    "Li": [("1s", (16.1195750, 2.9362007, 0.7946505)),
           ("2sp", (0.6362897469, 0.1478600533, 0.0480886784))],
    "Be": [("1s", (30.16787069, 5.495115306, 1.487192653)),
           ("2sp", (1.31483311, 0.3055389383, 0.0993707456))],
}

ATOMIC_NUMBER = {"H": 1, "Li": 3, "Be": 4}


def _double_factorial(n: int) -> int:
    out = 1
    while n > 1:
        out *= n
        n -= 2
    return out


def _primitive_norm(alpha: float, lmn: tuple[int, int, int]) -> float:
    l, m, n = lmn
    num = (2 * alpha / pi) ** 1.5 * (4 * alpha) ** (l + m + n)
    den = (_double_factorial(2 * l - 1) * _double_factorial(2 * m - 1)
           * _double_factorial(2 * n - 1))
    return sqrt(num / den)


@dataclass
class BasisFunction:
    """One contracted Cartesian Gaussian."""
    center: np.ndarray           # Bohr
    lmn: tuple[int, int, int]
    exponents: np.ndarray
    coefficients: np.ndarray     # includes primitive norms and contraction norm

    def normalize(self) -> None:
        from .integrals import overlap_contracted
        self.coefficients = self.coefficients * np.array(
            [_primitive_norm(a, self.lmn) for a in self.exponents])
        s = overlap_contracted(self, self)
        self.coefficients = self.coefficients / sqrt(s)


def build_basis(symbols: list[str], coords_bohr: np.ndarray) -> list[BasisFunction]:
    """Basis functions in atom order, s functions before p within a shell."""
    funcs: list[BasisFunction] = []
    for sym, xyz in zip(symbols, coords_bohr):
        for kind, exps in STO3G[sym]:
            exps_arr = np.array(exps)
            if kind == "1s":
                parts = [((0, 0, 0), S1_COEFS)]
            else:
                parts = [((0, 0, 0), SP2_S_COEFS)]
                parts += [(lmn, SP2_P_COEFS) for lmn in CARTESIANS[1]]
            for lmn, coefs in parts:
                bf = BasisFunction(center=np.asarray(xyz, dtype=float),
                                   lmn=lmn, exponents=exps_arr,
                                   coefficients=np.array(coefs))
                bf.normalize()
                funcs.append(bf)
    return funcs
