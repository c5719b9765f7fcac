"""Exact diagonalization in the particle-number/Sz sector of the reference.

The Hamiltonian is built over determinants with fixed alpha and beta electron
counts via Slater-Condon rules and diagonalized densely; sector dimensions
for the benchmark systems are a few hundred at most.  For degenerate ground
states the lowest-index eigenvector is returned.
"""

from dataclasses import dataclass

import numpy as np

from .errors import CapacityError, DimensionError
from .simulator import Statevector
from .slater import matrix_element, sector_determinants

__all__ = ["FciResult", "fci_ground_state", "overlap_with_fci"]

DENSE_CAP = 16


@dataclass
class FciResult:
    energy: float
    ground_state: Statevector
    sector: tuple   # (n_electrons, sz)


def fci_ground_state(sys, qubit_cap=DENSE_CAP):
    """Lowest eigenpair of the Hamiltonian restricted to the reference sector."""
    n = sys.n_spin_orbitals
    if n > qubit_cap:
        raise CapacityError(f"{n} spin-orbitals exceeds the dense FCI cap of {qubit_cap}")
    n_spatial = sys.n_spatial
    n_alpha = sum(1 for p in sys.occupied if p < n_spatial)
    n_beta = len(sys.occupied) - n_alpha

    masks = sector_determinants(n_spatial, n_alpha, n_beta)
    dim = len(masks)
    h = np.zeros((dim, dim))
    for a in range(dim):
        for b in range(a, dim):
            if ((masks[a] ^ masks[b]).bit_count()) > 4:
                continue
            h[a, b] = h[b, a] = matrix_element(sys.h1, sys.v_antisym, masks[a], masks[b])
    evals, evecs = np.linalg.eigh(h)
    energy = float(evals[0] + sys.core_energy)
    vec = evecs[:, 0]

    residual = np.linalg.norm(h @ vec - evals[0] * vec)
    if residual > 1e-9:
        raise ArithmeticError(f"eigenresidual {residual:.3e} above tolerance")

    amps = np.zeros(2**n, dtype=complex)
    for mask, coeff in zip(masks, vec):
        amps[mask] = coeff
    return FciResult(
        energy=energy,
        ground_state=Statevector(amps, n),
        sector=(sys.n_electrons, (n_alpha - n_beta) / 2.0),
    )


def overlap_with_fci(state, fci):
    """Squared overlap |<psi_fci|psi>|^2, insensitive to global phases."""
    if state.n_qubits != fci.ground_state.n_qubits:
        raise DimensionError("qubit count mismatch between state and FCI result")
    return float(abs(np.vdot(fci.ground_state.amplitudes, state.amplitudes)) ** 2)
