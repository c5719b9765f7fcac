"""Restricted closed-shell Hartree-Fock with DIIS and symmetry-aware occupation.

A plain aufbau iteration from the core guess can lock onto a symmetry-broken
stationary point (e.g. occupying one component of a degenerate pi pair of a
linear molecule).  To make fixture generation deterministic and correct, the
AO basis is first split into blocks that are exactly decoupled in S and the
core Hamiltonian (connected components of their sparsity graph; these
coincide with irrep supports for the symmetric geometries used here).  Every
distribution of electron pairs over blocks is converged independently with a
block-restricted aufbau occupation and the lowest converged solution wins.

Final canonical orbitals come from one global diagonalization of the
converged Fock matrix; the winner must satisfy aufbau so that the occupied
orbitals are exactly the lowest ones, which downstream FCIDUMP consumers
assume.  Degenerate orbital-energy blocks are rotated to diagonalize a fixed
AO-alignment operator and column signs are fixed, so regenerated integrals
are reproducible.
"""

import itertools
from dataclasses import dataclass

import numpy as np

from .integrals import build_integral_matrices, nuclear_repulsion

NUCLEAR_CHARGE = {"H": 1, "Li": 3, "B": 5, "O": 8}


class ScfConvergenceError(RuntimeError):
    pass


@dataclass
class ScfResult:
    energy: float            # total RHF energy (Hartree)
    e_nuc: float
    mo_coeff: np.ndarray     # AO x MO
    mo_energy: np.ndarray
    hcore: np.ndarray        # AO one-electron matrix
    eri: np.ndarray          # AO chemist-notation (ij|kl)
    overlap: np.ndarray
    n_electrons: int
    n_iter: int
    converged: bool
    pattern: tuple = ()              # electron pairs per symmetry block
    lower_solution_energy: float = None  # set when a lower RHF solution exists


def _symmetry_blocks(S, hcore, tol=1e-9):
    """Connected components of the |S| + |hcore| sparsity graph."""
    n = S.shape[0]
    adj = (np.abs(S) > tol) | (np.abs(hcore) > tol)
    unassigned = set(range(n))
    blocks = []
    while unassigned:
        stack = [min(unassigned)]
        comp = set()
        while stack:
            i = stack.pop()
            if i in comp:
                continue
            comp.add(i)
            stack.extend(j for j in range(n) if adj[i, j] and j not in comp)
        blocks.append(sorted(comp))
        unassigned -= comp
    return blocks


def _occupation_patterns(blocks, nocc):
    dims = [len(b) for b in blocks]
    for pattern in itertools.product(*(range(d + 1) for d in dims)):
        if sum(pattern) == nocc:
            yield pattern


def _canonicalize_degenerate(C, eps, S, degen_tol=1e-8):
    """Resolve unitary freedom inside degenerate eigenvalue blocks."""
    n = len(eps)
    align = np.diag(np.arange(n, dtype=float))
    i = 0
    while i < n:
        j = i + 1
        while j < n and abs(eps[j] - eps[i]) < degen_tol:
            j += 1
        if j - i > 1:
            block = C[:, i:j]
            sub = block.T @ S @ align @ S @ block
            sub = 0.5 * (sub + sub.T)
            _, rot = np.linalg.eigh(sub)
            C[:, i:j] = block @ rot
        i = j
    for k in range(n):
        imax = np.argmax(np.abs(C[:, k]))
        if C[imax, k] < 0:
            C[:, k] = -C[:, k]
    return C


class _RhfProblem:
    def __init__(self, atoms, basis):
        self.n_electrons = sum(NUCLEAR_CHARGE[el] for el, _ in atoms)
        if self.n_electrons % 2:
            raise ValueError("only closed-shell systems are supported")
        self.nocc = self.n_electrons // 2
        self.S, T, V, self.g = build_integral_matrices(basis, atoms)
        self.hcore = T + V
        self.e_nuc = nuclear_repulsion(atoms)
        self.blocks = _symmetry_blocks(self.S, self.hcore)

    def fock(self, D):
        J = np.einsum("ijkl,kl->ij", self.g, D)
        K = np.einsum("ikjl,kl->ij", self.g, D)
        return self.hcore + J - 0.5 * K

    def energy(self, D, F):
        return 0.5 * np.einsum("ij,ij->", D, self.hcore + F) + self.e_nuc

    def _block_density(self, F, pattern):
        """Block-restricted aufbau density for a pairs-per-block pattern."""
        n = self.S.shape[0]
        D = np.zeros((n, n))
        for block, npair in zip(self.blocks, pattern):
            if npair == 0:
                continue
            idx = np.ix_(block, block)
            sb, ub = np.linalg.eigh(self.S[idx])
            Xb = ub @ np.diag(sb**-0.5) @ ub.T
            _, cb = np.linalg.eigh(Xb.T @ F[idx] @ Xb)
            cfull = np.zeros((n, npair))
            cfull[block, :] = (Xb @ cb)[:, :npair]
            D += 2.0 * cfull @ cfull.T
        return D

    def solve_pattern(self, pattern, conv_tol, max_iter):
        D = self._block_density(self.hcore, pattern)
        energy = 0.0
        err_vecs, fock_mats = [], []
        for it in range(1, max_iter + 1):
            F = self.fock(D)
            err = F @ D @ self.S - self.S @ D @ F
            err_vecs.append(err.ravel())
            fock_mats.append(F)
            if len(err_vecs) > 8:
                err_vecs.pop(0)
                fock_mats.pop(0)
            if len(err_vecs) > 1:
                m = len(err_vecs)
                B = -np.ones((m + 1, m + 1))
                B[m, m] = 0.0
                for a in range(m):
                    for b in range(m):
                        B[a, b] = err_vecs[a] @ err_vecs[b]
                rhs = np.zeros(m + 1)
                rhs[m] = -1.0
                try:
                    w = np.linalg.solve(B, rhs)[:m]
                    F = sum(wi * Fi for wi, Fi in zip(w, fock_mats))
                except np.linalg.LinAlgError:
                    pass
            D_new = self._block_density(F, pattern)
            e_new = self.energy(D_new, self.fock(D_new))
            de = abs(e_new - energy)
            D, energy = D_new, e_new
            if de < conv_tol and np.max(np.abs(err)) < 1e-9:
                return energy, D, it
        return None


def run_rhf(atoms, basis, conv_tol=1e-12, max_iter=200, pattern=None):
    """Solve ground-state RHF for atoms (element, xyz-bohr) in the basis.

    conv_tol applies to the energy change; the density commutator must also
    drop below 1e-9.  By default the lowest converged solution over all
    symmetry-block occupation patterns is returned.  Passing a pattern pins
    the pairs-per-block occupation instead, which potential-energy scans use
    to follow one electronic configuration across geometries; if a lower
    solution exists elsewhere its energy is reported on the result.
    """
    prob = _RhfProblem(atoms, basis)
    best = None
    best_pattern = None
    for trial in _occupation_patterns(prob.blocks, prob.nocc):
        out = prob.solve_pattern(trial, conv_tol, max_iter)
        if out is None:
            continue
        if best is None or out[0] < best[0] - 1e-12:
            best = out
            best_pattern = trial
    if best is None:
        raise ScfConvergenceError("no occupation pattern converged")

    lower_energy = None
    if pattern is not None and tuple(pattern) != best_pattern:
        pinned = prob.solve_pattern(tuple(pattern), conv_tol, max_iter)
        if pinned is None:
            raise ScfConvergenceError(
                f"pinned occupation pattern {tuple(pattern)} did not converge")
        lower_energy = best[0]
        best = pinned
        best_pattern = tuple(pattern)
    energy, D, n_iter = best

    # global canonical orbitals from the converged Fock matrix
    F = prob.fock(D)
    s_val, s_vec = np.linalg.eigh(prob.S)
    X = s_vec @ np.diag(s_val**-0.5) @ s_vec.T
    eps, Cp = np.linalg.eigh(X.T @ F @ X)
    C = _canonicalize_degenerate(X @ Cp, eps, prob.S)

    # the ground solution must be aufbau so that "occupied = lowest" holds
    D_aufbau = 2.0 * C[:, :prob.nocc] @ C[:, :prob.nocc].T
    if not np.allclose(D_aufbau, D, atol=1e-6):
        raise ScfConvergenceError(
            "lowest SCF solution violates aufbau ordering; orbital reordering "
            "is not supported"
        )

    return ScfResult(
        energy=energy,
        e_nuc=prob.e_nuc,
        mo_coeff=C,
        mo_energy=eps,
        hcore=prob.hcore,
        eri=prob.g,
        overlap=prob.S,
        n_electrons=prob.n_electrons,
        n_iter=n_iter,
        converged=True,
        pattern=best_pattern,
        lower_solution_energy=lower_energy,
    )
