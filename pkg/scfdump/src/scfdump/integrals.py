"""Molecular integrals over contracted Cartesian Gaussians.

McMurchie-Davidson scheme: Cartesian overlap distributions are expanded in
Hermite Gaussians (coefficients ``E``), Coulomb integrals reduce to Hermite
Coulomb repulsion terms ``R`` built on the Boys function.  Adequate for s and
p shells of minimal bases; no attempt at vectorization since fixture
generation is offline.
"""

import numpy as np
from scipy.special import hyp1f1


def boys(n, x):
    """Boys function F_n(x) via the confluent hypergeometric identity."""
    return hyp1f1(n + 0.5, n + 1.5, -x) / (2.0 * n + 1.0)


def hermite_coef(i, j, t, Q, a, b):
    """Hermite expansion coefficient E_t^{ij} for Gaussians with exponents
    a, b separated by Q along one Cartesian direction."""
    p = a + b
    q = a * b / p
    if t < 0 or t > i + j:
        return 0.0
    if i == j == t == 0:
        return np.exp(-q * Q * Q)
    if j == 0:
        return (
            hermite_coef(i - 1, j, t - 1, Q, a, b) / (2.0 * p)
            - q * Q / a * hermite_coef(i - 1, j, t, Q, a, b)
            + (t + 1) * hermite_coef(i - 1, j, t + 1, Q, a, b)
        )
    return (
        hermite_coef(i, j - 1, t - 1, Q, a, b) / (2.0 * p)
        + q * Q / b * hermite_coef(i, j - 1, t, Q, a, b)
        + (t + 1) * hermite_coef(i, j - 1, t + 1, Q, a, b)
    )


def hermite_coulomb(t, u, v, n, p, PC):
    """Auxiliary Hermite Coulomb term R^n_{tuv}."""
    x, y, z = PC
    if t == u == v == 0:
        r2 = x * x + y * y + z * z
        return (-2.0 * p) ** n * boys(n, p * r2)
    if t > 0:
        val = 0.0
        if t > 1:
            val += (t - 1) * hermite_coulomb(t - 2, u, v, n + 1, p, PC)
        val += x * hermite_coulomb(t - 1, u, v, n + 1, p, PC)
        return val
    if u > 0:
        val = 0.0
        if u > 1:
            val += (u - 1) * hermite_coulomb(t, u - 2, v, n + 1, p, PC)
        val += y * hermite_coulomb(t, u - 1, v, n + 1, p, PC)
        return val
    val = 0.0
    if v > 1:
        val += (v - 1) * hermite_coulomb(t, u, v - 2, n + 1, p, PC)
    val += z * hermite_coulomb(t, u, v - 1, n + 1, p, PC)
    return val


def _overlap_prim(a, lmn1, A, b, lmn2, B):
    s = (np.pi / (a + b)) ** 1.5
    for q in range(3):
        s *= hermite_coef(lmn1[q], lmn2[q], 0, A[q] - B[q], a, b)
    return s


def _kinetic_prim(a, lmn1, A, b, lmn2, B):
    l2, m2, n2 = lmn2

    def s_shift(dq, dl):
        lmn = list(lmn2)
        lmn[dq] += dl
        if lmn[dq] < 0:
            return 0.0
        return _overlap_prim(a, lmn1, A, b, tuple(lmn), B)

    term0 = b * (2 * (l2 + m2 + n2) + 3) * _overlap_prim(a, lmn1, A, b, lmn2, B)
    term1 = -2.0 * b * b * (s_shift(0, 2) + s_shift(1, 2) + s_shift(2, 2))
    term2 = -0.5 * (
        l2 * (l2 - 1) * s_shift(0, -2)
        + m2 * (m2 - 1) * s_shift(1, -2)
        + n2 * (n2 - 1) * s_shift(2, -2)
    )
    return term0 + term1 + term2


def _nuclear_prim(a, lmn1, A, b, lmn2, B, C):
    p = a + b
    P = (a * A + b * B) / p
    PC = P - C
    val = 0.0
    for t in range(lmn1[0] + lmn2[0] + 1):
        et = hermite_coef(lmn1[0], lmn2[0], t, A[0] - B[0], a, b)
        for u in range(lmn1[1] + lmn2[1] + 1):
            eu = hermite_coef(lmn1[1], lmn2[1], u, A[1] - B[1], a, b)
            for v in range(lmn1[2] + lmn2[2] + 1):
                ev = hermite_coef(lmn1[2], lmn2[2], v, A[2] - B[2], a, b)
                val += et * eu * ev * hermite_coulomb(t, u, v, 0, p, PC)
    return 2.0 * np.pi / p * val


def _contract_pair(bf1, bf2, prim_fn):
    val = 0.0
    for a, ca in zip(bf1.exponents, bf1.coefficients):
        for b, cb in zip(bf2.exponents, bf2.coefficients):
            val += ca * cb * prim_fn(a, b)
    return val


def overlap(bf1, bf2):
    return _contract_pair(
        bf1, bf2, lambda a, b: _overlap_prim(a, bf1.lmn, bf1.center, b, bf2.lmn, bf2.center)
    )


def kinetic(bf1, bf2):
    return _contract_pair(
        bf1, bf2, lambda a, b: _kinetic_prim(a, bf1.lmn, bf1.center, b, bf2.lmn, bf2.center)
    )


def nuclear(bf1, bf2, C):
    return _contract_pair(
        bf1, bf2,
        lambda a, b: _nuclear_prim(a, bf1.lmn, bf1.center, b, bf2.lmn, bf2.center, C),
    )


def _eri_prim(a, lmn1, A, b, lmn2, B, c, lmn3, C, d, lmn4, D):
    p = a + b
    q = c + d
    alpha = p * q / (p + q)
    P = (a * A + b * B) / p
    Q = (c * C + d * D) / q
    PQ = P - Q

    e_bra = [
        [
            hermite_coef(lmn1[w], lmn2[w], t, A[w] - B[w], a, b)
            for t in range(lmn1[w] + lmn2[w] + 1)
        ]
        for w in range(3)
    ]
    e_ket = [
        [
            hermite_coef(lmn3[w], lmn4[w], s, C[w] - D[w], c, d)
            for s in range(lmn3[w] + lmn4[w] + 1)
        ]
        for w in range(3)
    ]

    val = 0.0
    for t in range(len(e_bra[0])):
        for u in range(len(e_bra[1])):
            for v in range(len(e_bra[2])):
                ebra = e_bra[0][t] * e_bra[1][u] * e_bra[2][v]
                if ebra == 0.0:
                    continue
                for tt in range(len(e_ket[0])):
                    for uu in range(len(e_ket[1])):
                        for vv in range(len(e_ket[2])):
                            eket = e_ket[0][tt] * e_ket[1][uu] * e_ket[2][vv]
                            if eket == 0.0:
                                continue
                            val += (
                                ebra
                                * eket
                                * (-1.0) ** (tt + uu + vv)
                                * hermite_coulomb(t + tt, u + uu, v + vv, 0, alpha, PQ)
                            )
    return 2.0 * np.pi**2.5 / (p * q * np.sqrt(p + q)) * val


def eri(bf1, bf2, bf3, bf4):
    """Chemist-notation repulsion integral (12|34)."""
    val = 0.0
    for a, ca in zip(bf1.exponents, bf1.coefficients):
        for b, cb in zip(bf2.exponents, bf2.coefficients):
            for c, cc in zip(bf3.exponents, bf3.coefficients):
                for d, cd in zip(bf4.exponents, bf4.coefficients):
                    val += ca * cb * cc * cd * _eri_prim(
                        a, bf1.lmn, bf1.center,
                        b, bf2.lmn, bf2.center,
                        c, bf3.lmn, bf3.center,
                        d, bf4.lmn, bf4.center,
                    )
    return val


def build_integral_matrices(basis, atoms):
    """Assemble S, T, V_ne matrices and the full chemist-notation ERI tensor.

    atoms: list of (element, xyz-in-bohr); nuclear charges from basis data.
    """
    from .basis import NUCLEAR_CHARGE

    n = len(basis)
    S = np.zeros((n, n))
    T = np.zeros((n, n))
    V = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1):
            S[i, j] = S[j, i] = overlap(basis[i], basis[j])
            T[i, j] = T[j, i] = kinetic(basis[i], basis[j])
            v = 0.0
            for element, xyz in atoms:
                v -= NUCLEAR_CHARGE[element] * nuclear(basis[i], basis[j], np.asarray(xyz))
            V[i, j] = V[j, i] = v

    g = np.zeros((n, n, n, n))
    # unique chemist-canonical quartets, 8-fold symmetry expanded in place
    for i in range(n):
        for j in range(i + 1):
            ij = i * (i + 1) // 2 + j
            for k in range(n):
                for l in range(k + 1):
                    kl = k * (k + 1) // 2 + l
                    if ij < kl:
                        continue
                    val = eri(basis[i], basis[j], basis[k], basis[l])
                    for (p, q, r, s) in (
                        (i, j, k, l), (j, i, k, l), (i, j, l, k), (j, i, l, k),
                        (k, l, i, j), (l, k, i, j), (k, l, j, i), (l, k, j, i),
                    ):
                        g[p, q, r, s] = val
    return S, T, V, g


def nuclear_repulsion(atoms):
    from .basis import NUCLEAR_CHARGE

    e = 0.0
    for i, (el1, r1) in enumerate(atoms):
        for el2, r2 in atoms[i + 1:]:
            e += NUCLEAR_CHARGE[el1] * NUCLEAR_CHARGE[el2] / np.linalg.norm(
                np.asarray(r1) - np.asarray(r2)
            )
    return e
