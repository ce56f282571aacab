"""One- and two-electron integrals over contracted Cartesian Gaussians via
the McMurchie-Davidson scheme (Hermite Gaussian expansion + Hermite Coulomb
recursion).  Basis sets here are tiny (s and p only), so the straightforward
recursive implementation is fast enough.
"""

from __future__ import annotations

from math import exp, pi, sqrt

import numpy as np
from scipy.special import hyp1f1

from .basis import BasisFunction


def boys(n: int, t: float) -> float:
    return hyp1f1(n + 0.5, n + 1.5, -t) / (2.0 * n + 1.0)


def hermite_coef(i: int, j: int, t: int, qx: float, a: float, b: float) -> float:
    """Expansion coefficient E_t^{ij} of a Gaussian product in Hermite
    Gaussians along one axis; qx = Ax - Bx."""
    p = a + b
    q = a * b / p
    if t < 0 or t > i + j:
        return 0.0
    if i == j == t == 0:
        return exp(-q * qx * qx)
    if j == 0:
        return ((1.0 / (2.0 * p)) * hermite_coef(i - 1, j, t - 1, qx, a, b)
                - (q * qx / a) * hermite_coef(i - 1, j, t, qx, a, b)
                + (t + 1) * hermite_coef(i - 1, j, t + 1, qx, a, b))
    return ((1.0 / (2.0 * p)) * hermite_coef(i, j - 1, t - 1, qx, a, b)
            + (q * qx / b) * hermite_coef(i, j - 1, t, qx, a, b)
            + (t + 1) * hermite_coef(i, j - 1, t + 1, qx, a, b))


def hermite_coulomb(t: int, u: int, v: int, n: int, p: float,
                    pc: np.ndarray, rpc2: float) -> float:
    """Integral R^n_{tuv} of a Hermite Gaussian against 1/r."""
    if t == u == v == 0:
        return (-2.0 * p) ** n * boys(n, p * rpc2)
    if t > 0:
        val = pc[0] * hermite_coulomb(t - 1, u, v, n + 1, p, pc, rpc2)
        if t > 1:
            val += (t - 1) * hermite_coulomb(t - 2, u, v, n + 1, p, pc, rpc2)
        return val
    if u > 0:
        val = pc[1] * hermite_coulomb(t, u - 1, v, n + 1, p, pc, rpc2)
        if u > 1:
            val += (u - 1) * hermite_coulomb(t, u - 2, v, n + 1, p, pc, rpc2)
        return val
    val = pc[2] * hermite_coulomb(t, u, v - 1, n + 1, p, pc, rpc2)
    if v > 1:
        val += (v - 1) * hermite_coulomb(t, u, v - 2, n + 1, p, pc, rpc2)
    return val


def _overlap_prim(a, lmn1, ra, b, lmn2, rb) -> float:
    p = a + b
    s = (pi / p) ** 1.5
    for ax in range(3):
        s *= hermite_coef(lmn1[ax], lmn2[ax], 0, ra[ax] - rb[ax], a, b)
    return s


def _kinetic_prim(a, lmn1, ra, b, lmn2, rb) -> float:
    l2, m2, n2 = lmn2

    def s(dl, dm, dn):
        return _overlap_prim(a, lmn1, ra, b, (l2 + dl, m2 + dm, n2 + dn), rb)

    term = b * (2 * (l2 + m2 + n2) + 3) * s(0, 0, 0)
    term -= 2.0 * b * b * (s(2, 0, 0) + s(0, 2, 0) + s(0, 0, 2))
    term -= 0.5 * (l2 * (l2 - 1) * s(-2, 0, 0) + m2 * (m2 - 1) * s(0, -2, 0)
                   + n2 * (n2 - 1) * s(0, 0, -2))
    return term


def _nuclear_prim(a, lmn1, ra, b, lmn2, rb, rc) -> float:
    p = a + b
    rp = (a * ra + b * rb) / p
    pc = rp - rc
    rpc2 = float(pc @ pc)
    val = 0.0
    for t in range(lmn1[0] + lmn2[0] + 1):
        e1 = hermite_coef(lmn1[0], lmn2[0], t, ra[0] - rb[0], a, b)
        for u in range(lmn1[1] + lmn2[1] + 1):
            e2 = hermite_coef(lmn1[1], lmn2[1], u, ra[1] - rb[1], a, b)
            for v in range(lmn1[2] + lmn2[2] + 1):
                e3 = hermite_coef(lmn1[2], lmn2[2], v, ra[2] - rb[2], a, b)
                val += e1 * e2 * e3 * hermite_coulomb(t, u, v, 0, p, pc, rpc2)
    return 2.0 * pi / p * val


def _contract2(prim_fn, f1: BasisFunction, f2: BasisFunction) -> float:
    total = 0.0
    for a, ca in zip(f1.exponents, f1.coefficients):
        for b, cb in zip(f2.exponents, f2.coefficients):
            total += ca * cb * prim_fn(a, f1.lmn, f1.center, b, f2.lmn, f2.center)
    return total


def overlap_contracted(f1: BasisFunction, f2: BasisFunction) -> float:
    return _contract2(_overlap_prim, f1, f2)


def kinetic_contracted(f1: BasisFunction, f2: BasisFunction) -> float:
    return _contract2(_kinetic_prim, f1, f2)


def nuclear_contracted(f1: BasisFunction, f2: BasisFunction,
                       rc: np.ndarray) -> float:
    return _contract2(lambda a, l1, r1, b, l2, r2:
                      _nuclear_prim(a, l1, r1, b, l2, r2, rc), f1, f2)


def _eri_prim(a, lmn1, ra, b, lmn2, rb, c, lmn3, rc, d, lmn4, rd) -> float:
    p = a + b
    q = c + d
    alpha = p * q / (p + q)
    rp = (a * ra + b * rb) / p
    rq = (c * rc + d * rd) / q
    pq = rp - rq
    rpq2 = float(pq @ pq)

    l1, m1, n1 = lmn1
    l2, m2, n2 = lmn2
    l3, m3, n3 = lmn3
    l4, m4, n4 = lmn4
    val = 0.0
    for t in range(l1 + l2 + 1):
        e1 = hermite_coef(l1, l2, t, ra[0] - rb[0], a, b)
        if e1 == 0.0:
            continue
        for u in range(m1 + m2 + 1):
            e2 = hermite_coef(m1, m2, u, ra[1] - rb[1], a, b)
            if e2 == 0.0:
                continue
            for v in range(n1 + n2 + 1):
                e3 = hermite_coef(n1, n2, v, ra[2] - rb[2], a, b)
                if e3 == 0.0:
                    continue
                for tau in range(l3 + l4 + 1):
                    e4 = hermite_coef(l3, l4, tau, rc[0] - rd[0], c, d)
                    if e4 == 0.0:
                        continue
                    for nu in range(m3 + m4 + 1):
                        e5 = hermite_coef(m3, m4, nu, rc[1] - rd[1], c, d)
                        if e5 == 0.0:
                            continue
                        for phi in range(n3 + n4 + 1):
                            e6 = hermite_coef(n3, n4, phi, rc[2] - rd[2], c, d)
                            if e6 == 0.0:
                                continue
                            sign = (-1.0) ** (tau + nu + phi)
                            val += (e1 * e2 * e3 * e4 * e5 * e6 * sign
                                    * hermite_coulomb(t + tau, u + nu, v + phi,
                                                      0, alpha, pq, rpq2))
    return val * 2.0 * pi ** 2.5 / (p * q * sqrt(p + q))


def eri_contracted(f1, f2, f3, f4) -> float:
    total = 0.0
    for a, ca in zip(f1.exponents, f1.coefficients):
        for b, cb in zip(f2.exponents, f2.coefficients):
            for c, cc in zip(f3.exponents, f3.coefficients):
                for d, cd in zip(f4.exponents, f4.coefficients):
                    total += ca * cb * cc * cd * _eri_prim(
                        a, f1.lmn, f1.center, b, f2.lmn, f2.center,
                        c, f3.lmn, f3.center, d, f4.lmn, f4.center)
    return total


def one_electron_matrices(funcs, charges, coords):
    """(S, T, V) over the contracted basis; V sums all nuclear centers."""
    n = len(funcs)
    s = np.zeros((n, n))
    t = np.zeros((n, n))
    v = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1):
            s[i, j] = s[j, i] = overlap_contracted(funcs[i], funcs[j])
            t[i, j] = t[j, i] = kinetic_contracted(funcs[i], funcs[j])
            vij = sum(-z * nuclear_contracted(funcs[i], funcs[j], rc)
                      for z, rc in zip(charges, coords))
            v[i, j] = v[j, i] = vij
    return s, t, v


def eri_tensor(funcs) -> np.ndarray:
    """Chemist-notation (ij|kl) with 8-fold permutation symmetry."""
    n = len(funcs)
    eri = np.zeros((n, n, n, n))
    for i in range(n):
        for j in range(i + 1):
            ij = i * (i + 1) // 2 + j
            for k in range(n):
                for l in range(k + 1):
                    kl = k * (k + 1) // 2 + l
                    if kl > ij:
                        continue
                    val = eri_contracted(funcs[i], funcs[j], funcs[k], funcs[l])
                    for p, q in ((i, j), (j, i)):
                        for r, s_ in ((k, l), (l, k)):
                            eri[p, q, r, s_] = val
                            eri[r, s_, p, q] = val
    return eri
