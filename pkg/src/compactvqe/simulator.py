"""Exact dense statevector engine with analytic adjoint gradients.

Generator exponentials are applied as products of single-string Pauli
rotations.  Because the Jordan-Wigner image of one fermionic string (minus
conjugate) has mutually commuting terms, the product equals the exact matrix
exponential; commutativity is asserted at compile time and, should it ever
fail, the same product is kept as a first-order factorization with fixed
term order and a warning.

Pauli strings are compiled to (x_mask, z_mask, phase) triples acting on the
amplitude array: P|b> = phase * (-1)^{popcount(b & z)} |b XOR x>.
"""

import warnings
from dataclasses import dataclass

import numpy as np

from . import pauli as pauli_mod
from .errors import CapacityError, DimensionError, HermiticityError, StateError
from .slater import hf_determinant

__all__ = [
    "Statevector",
    "prepare_reference",
    "apply_generator",
    "expectation",
    "energy_and_gradient",
    "AnsatzSimulator",
    "DEFAULT_QUBIT_CAP",
]

DEFAULT_QUBIT_CAP = 20
NORM_TOL = 1e-10


@dataclass
class Statevector:
    amplitudes: np.ndarray
    n_qubits: int

    def copy(self):
        return Statevector(self.amplitudes.copy(), self.n_qubits)

    def norm(self):
        return float(np.linalg.norm(self.amplitudes))

    def check_normalized(self):
        if abs(self.norm() - 1.0) > NORM_TOL:
            raise StateError(f"statevector norm {self.norm()} deviates from 1")


def prepare_reference(sys, qubit_cap=DEFAULT_QUBIT_CAP):
    """Computational-basis Hartree-Fock state in blocked spin-orbital order."""
    n = sys.n_spin_orbitals
    if n > qubit_cap:
        raise CapacityError(f"{n} qubits exceeds the dense-statevector cap of {qubit_cap}")
    amps = np.zeros(2**n, dtype=complex)
    amps[hf_determinant(sys)] = 1.0
    return Statevector(amps, n)


def _compile_string(letters):
    """(x_mask, z_mask, phase) for a letter string (qubit 0 leftmost)."""
    x = z = 0
    ny = 0
    for q, letter in enumerate(letters):
        if letter == "X":
            x |= 1 << q
        elif letter == "Y":
            x |= 1 << q
            z |= 1 << q
            ny += 1
        elif letter == "Z":
            z |= 1 << q
    return x, z, (1j) ** (ny % 4)


class CompiledPauliSum:
    """Mask-compiled Pauli sum for fast statevector application.

    Each row is (x_mask, z_mask, coeff, phase): the letter string equals
    phase * X^x Z^z with phase = i^{#Y}, and coeff is the term coefficient
    of the hermitian letter string.
    """

    def __init__(self, pauli_sum):
        self.n_qubits = pauli_sum.n_qubits
        self.rows = []
        for letters, coeff in pauli_sum.sorted_terms():
            x, z, phase = _compile_string(letters)
            self.rows.append((x, z, coeff, phase))
        self._signs = {}

    def _sign_vector(self, z):
        sign = self._signs.get(z)
        if sign is None:
            idx = np.arange(2**self.n_qubits, dtype=np.uint64)
            parity = np.bitwise_count(idx & np.uint64(z)) & np.uint64(1)
            sign = 1.0 - 2.0 * parity.astype(np.float64)
            self._signs[z] = sign
        return sign

    def string_apply(self, x, z, phase, amps):
        """Hermitian letter string applied to the amplitude array:
        (P psi)[b] = phase * (-1)^{(b^x)·z} psi[b^x]."""
        signed = amps * self._sign_vector(z)
        if x:
            idx = np.arange(len(amps), dtype=np.uint64) ^ np.uint64(x)
            signed = signed[idx]
        return phase * signed

    def matvec(self, amps):
        out = np.zeros_like(amps)
        for x, z, coeff, phase in self.rows:
            out += coeff * self.string_apply(x, z, phase, amps)
        return out

    def apply_exponential(self, amps, theta, inverse=False):
        """Product of exp(theta * c_j * P_j) over rows in canonical order;
        requires purely imaginary coefficients c_j = i*gamma_j."""
        rows = reversed(self.rows) if inverse else self.rows
        for x, z, coeff, phase in rows:
            gamma = coeff.imag
            phi = -theta * gamma if inverse else theta * gamma
            if phi == 0.0:
                continue
            # exp(i phi P) psi = cos(phi) psi + i sin(phi) P psi
            p_amps = self.string_apply(x, z, phase, amps)
            amps = np.cos(phi) * amps + 1j * np.sin(phi) * p_amps
        return amps


class CompiledGenerator:
    """Rotation sequence implementing exp(theta * kappa) for one generator."""

    def __init__(self, generator, n_qubits):
        self.generator = generator
        image = pauli_mod.jw_map_generator(generator, n_qubits)
        if not image.is_antihermitian(1e-12):
            raise StateError("generator image is not anti-hermitian")
        self.exact = pauli_mod.mutually_commuting(image)
        if not self.exact:
            warnings.warn(
                "generator image terms do not mutually commute; applying a "
                "fixed-order first-order factorization", stacklevel=2)
        self.compiled = CompiledPauliSum(image)

    def apply(self, amps, theta, inverse=False):
        return self.compiled.apply_exponential(amps, theta, inverse)

    def kappa_apply(self, amps):
        return self.compiled.matvec(amps)


def apply_generator(state, gen_pauli, theta):
    """Apply exp(theta * kappa) given the generator's Pauli image."""
    state.check_normalized()
    compiled = CompiledPauliSum(gen_pauli)
    amps = compiled.apply_exponential(state.amplitudes, theta)
    return Statevector(amps, state.n_qubits)


def expectation(state, h_pauli):
    """Real expectation value of a hermitian Pauli sum."""
    if isinstance(h_pauli, CompiledPauliSum):
        compiled = h_pauli
    else:
        if not h_pauli.is_hermitian(1e-12):
            raise HermiticityError("expectation of a non-hermitian sum")
        compiled = CompiledPauliSum(h_pauli)
    val = np.vdot(state.amplitudes, compiled.matvec(state.amplitudes))
    if abs(val.imag) > NORM_TOL:
        raise HermiticityError(f"imaginary expectation residue {val.imag:.3e}")
    return float(val.real)


class AnsatzSimulator:
    """Compiled ansatz + Hamiltonian bound to a reference state."""

    def __init__(self, ansatz, hamiltonian, reference):
        self.n_qubits = ansatz.n_qubits
        if reference.n_qubits != self.n_qubits:
            raise DimensionError("reference register size mismatch")
        self.reference = reference
        self.generators = [
            CompiledGenerator(g, self.n_qubits) for g in ansatz.generators()
        ]
        self.hamiltonian = CompiledPauliSum(hamiltonian)
        self.n_params = len(self.generators)

    def state(self, params):
        if len(params) != self.n_params:
            raise DimensionError(
                f"got {len(params)} parameters for {self.n_params} generators")
        amps = self.reference.amplitudes.copy()
        for gen, theta in zip(self.generators, params):
            amps = gen.apply(amps, theta)
        return Statevector(amps, self.n_qubits)

    def energy(self, params):
        state = self.state(params)
        return expectation(state, self.hamiltonian)

    def energy_and_gradient(self, params):
        """Energy and analytic gradient via one reverse (adjoint) sweep.

        dE/dtheta_k = 2 Re <lambda_k| kappa_k |psi_k> with psi_k the state
        after applying generators 1..k and lambda_k the Hamiltonian-projected
        state pulled back through generators N..k+1.
        """
        if len(params) != self.n_params:
            raise DimensionError(
                f"got {len(params)} parameters for {self.n_params} generators")
        psi = self.reference.amplitudes.copy()
        for gen, theta in zip(self.generators, params):
            psi = gen.apply(psi, theta)
        h_psi = self.hamiltonian.matvec(psi)
        energy = float(np.vdot(psi, h_psi).real)

        grad = np.zeros(self.n_params)
        lam = h_psi
        for k in range(self.n_params - 1, -1, -1):
            gen = self.generators[k]
            grad[k] = 2.0 * np.vdot(lam, gen.kappa_apply(psi)).real
            if k:
                psi = gen.apply(psi, params[k], inverse=True)
                lam = gen.apply(lam, params[k], inverse=True)
        return energy, grad


def energy_and_gradient(ansatz, params, hamiltonian, reference):
    """One-shot energy/gradient evaluation (compiles the ansatz each call;
    use AnsatzSimulator for repeated evaluations)."""
    params = np.asarray(params, dtype=float)
    sim = AnsatzSimulator(ansatz, hamiltonian, reference)
    if sim.n_params == 0:
        return expectation(reference, sim.hamiltonian), np.zeros(0)
    return sim.energy_and_gradient(params)
