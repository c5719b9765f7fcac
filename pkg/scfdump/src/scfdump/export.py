"""MO transformation, frozen-core folding and FCIDUMP export."""

from dataclasses import dataclass

import numpy as np

ANGSTROM_TO_BOHR = 1.0 / 0.529177210903


@dataclass
class ActiveSpaceIntegrals:
    n_orbitals: int
    n_electrons: int
    core_energy: float       # nuclear repulsion + folded frozen-core energy
    h1: np.ndarray           # active-space one-electron MO integrals
    g: np.ndarray            # active-space chemist-notation MO ERIs
    hf_energy: float         # total RHF energy of the parent calculation


def mo_integrals(scf):
    C = scf.mo_coeff
    h1 = C.T @ scf.hcore @ C
    g = np.einsum("pqrs,pi,qj,rk,sl->ijkl", scf.eri, C, C, C, C, optimize=True)
    return h1, g


def freeze_core(scf, n_frozen):
    """Fold the lowest n_frozen spatial orbitals into an effective core.

    Returns ActiveSpaceIntegrals over the remaining orbitals; the frozen
    contribution (2 sum h_ii + sum_ij [2(ii|jj) - (ij|ji)]) is absorbed into
    core_energy, and the active one-electron integrals pick up the frozen
    Coulomb/exchange field.
    """
    h1, g = mo_integrals(scf)
    n = h1.shape[0]
    if n_frozen >= scf.n_electrons // 2:
        raise ValueError("cannot freeze all occupied orbitals")

    e_core = scf.e_nuc
    for i in range(n_frozen):
        e_core += 2.0 * h1[i, i]
        for j in range(n_frozen):
            e_core += 2.0 * g[i, i, j, j] - g[i, j, j, i]

    act = slice(n_frozen, n)
    h_eff = h1[act, act].copy()
    for i in range(n_frozen):
        h_eff += 2.0 * g[act, act, i, i] - g[act, i, i, act]

    return ActiveSpaceIntegrals(
        n_orbitals=n - n_frozen,
        n_electrons=scf.n_electrons - 2 * n_frozen,
        core_energy=e_core,
        h1=h_eff,
        g=g[act, act, act, act].copy(),
        hf_energy=scf.energy,
    )


def write_fcidump(integrals, path, threshold=1e-12):
    """Write an FCIDUMP file: namelist header then `value i j k l` records.

    Two-electron entries are emitted once per chemist-canonical index quartet
    (i>=j, k>=l, (ij)>=(kl)); no orbital-energy records are written.
    """
    n = integrals.n_orbitals
    lines = [
        f" &FCI NORB={n},NELEC={integrals.n_electrons},MS2=0,",
        "  ORBSYM=" + "1," * n,
        "  ISYM=1,",
        " &END",
    ]

    def rec(value, i, j, k, l):
        lines.append(f" {value: .16E} {i:4d} {j:4d} {k:4d} {l:4d}")

    for i in range(n):
        for j in range(i + 1):
            ij = i * (i + 1) // 2 + j
            for k in range(n):
                for l in range(k + 1):
                    kl = k * (k + 1) // 2 + l
                    if ij < kl:
                        continue
                    val = integrals.g[i, j, k, l]
                    if abs(val) > threshold:
                        rec(val, i + 1, j + 1, k + 1, l + 1)
    for i in range(n):
        for j in range(i + 1):
            if abs(integrals.h1[i, j]) > threshold:
                rec(integrals.h1[i, j], i + 1, j + 1, 0, 0)
    rec(integrals.core_energy, 0, 0, 0, 0)

    with open(path, "w") as f:
        f.write("\n".join(lines) + "\n")
