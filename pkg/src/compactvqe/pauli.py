"""Pauli-string algebra, Jordan-Wigner mapping and circuit resource counts.

Letter strings are ordered qubit-0-leftmost.  Under the Jordan-Wigner
encoding with blocked spin-orbital ordering,

    a_p^dagger -> Z_0 ... Z_{p-1} (X_p - i Y_p)/2,
    a_p        -> Z_0 ... Z_{p-1} (X_p + i Y_p)/2,

so the image of an anti-hermitian generator has purely imaginary
coefficients and its terms mutually commute.  CNOT counts assume the
standard staircase synthesis: a weight-w Pauli rotation costs 2(w-1) CNOTs,
with no cancellation between consecutive rotations.
"""

from dataclasses import dataclass

import numpy as np

from .errors import MappingError

__all__ = [
    "PauliSum",
    "ResourceCount",
    "jw_annihilation",
    "jw_creation",
    "jw_map_generator",
    "jw_map_hamiltonian",
    "mutually_commuting",
    "count_resources",
    "emit_rotation_sequence",
]

COEFF_DROP = 1e-14

_PROD = {
    ("I", "I"): (1, "I"), ("I", "X"): (1, "X"), ("I", "Y"): (1, "Y"), ("I", "Z"): (1, "Z"),
    ("X", "I"): (1, "X"), ("X", "X"): (1, "I"), ("X", "Y"): (1j, "Z"), ("X", "Z"): (-1j, "Y"),
    ("Y", "I"): (1, "Y"), ("Y", "X"): (-1j, "Z"), ("Y", "Y"): (1, "I"), ("Y", "Z"): (1j, "X"),
    ("Z", "I"): (1, "Z"), ("Z", "X"): (1j, "Y"), ("Z", "Y"): (-1j, "X"), ("Z", "Z"): (1, "I"),
}


def _mul_strings(s1, s2):
    phase = 1 + 0j
    letters = []
    for a, b in zip(s1, s2):
        f, c = _PROD[(a, b)]
        phase *= f
        letters.append(c)
    return phase, "".join(letters)


class PauliSum:
    """Weighted sum of Pauli letter strings with canonical term storage."""

    def __init__(self, n_qubits, terms=None):
        self.n_qubits = n_qubits
        self.terms = {}
        if terms:
            for letters, coeff in terms.items():
                self._add(letters, coeff)

    def _add(self, letters, coeff):
        new = self.terms.get(letters, 0j) + coeff
        if abs(new) <= COEFF_DROP:
            self.terms.pop(letters, None)
        else:
            self.terms[letters] = new

    @classmethod
    def identity(cls, n_qubits, coeff=1.0):
        return cls(n_qubits, {"I" * n_qubits: complex(coeff)})

    @classmethod
    def zero(cls, n_qubits):
        return cls(n_qubits)

    def copy(self):
        return PauliSum(self.n_qubits, dict(self.terms))

    def __add__(self, other):
        out = self.copy()
        for letters, coeff in other.terms.items():
            out._add(letters, coeff)
        return out

    def __sub__(self, other):
        out = self.copy()
        for letters, coeff in other.terms.items():
            out._add(letters, -coeff)
        return out

    def __mul__(self, other):
        if isinstance(other, PauliSum):
            out = PauliSum.zero(self.n_qubits)
            for s1, c1 in self.terms.items():
                for s2, c2 in other.terms.items():
                    phase, s = _mul_strings(s1, s2)
                    out._add(s, phase * c1 * c2)
            return out
        out = PauliSum.zero(self.n_qubits)
        for s, c in self.terms.items():
            out._add(s, c * other)
        return out

    __rmul__ = __mul__

    def dagger(self):
        # Pauli strings are hermitian, so only coefficients conjugate
        return PauliSum(self.n_qubits, {s: c.conjugate() for s, c in self.terms.items()})

    def sorted_terms(self):
        """Canonical (letters, coefficient) order used everywhere rotations
        or matrix applications are sequenced."""
        return sorted(self.terms.items())

    def weight(self, letters):
        return sum(1 for c in letters if c != "I")

    def is_hermitian(self, tol=1e-12):
        return all(abs(c.imag) <= tol for c in self.terms.values())

    def is_antihermitian(self, tol=1e-12):
        return all(abs(c.real) <= tol for c in self.terms.values())

    def __len__(self):
        return len(self.terms)

    def __repr__(self):
        inner = " + ".join(f"({c:.6g})*{s}" for s, c in self.sorted_terms())
        return f"PauliSum[{inner or '0'}]"


def _ladder(p, n_qubits, sign):
    """(X_p + sign * i Y_p)/2 with the Z parity chain on qubits < p."""
    if p >= n_qubits or p < 0:
        raise MappingError(f"spin-orbital index {p} outside qubit register of {n_qubits}")
    chain = "Z" * p
    tail = "I" * (n_qubits - p - 1)
    return PauliSum(n_qubits, {
        chain + "X" + tail: 0.5,
        chain + "Y" + tail: 0.5j * sign,
    })


def jw_annihilation(p, n_qubits):
    return _ladder(p, n_qubits, +1)


def jw_creation(p, n_qubits):
    return _ladder(p, n_qubits, -1)


def jw_map_string(ops, n_qubits):
    """Map a product of ladder operators ((index, is_creation) left-to-right)
    to its Pauli image."""
    out = PauliSum.identity(n_qubits)
    for p, dagger in ops:
        out = out * (jw_creation(p, n_qubits) if dagger else jw_annihilation(p, n_qubits))
    return out


def jw_map_generator(gen, n_qubits):
    """Image of the anti-hermitian generator (string minus conjugate)."""
    t_img = jw_map_string(gen.second_quantized_ops(), n_qubits)
    kappa = t_img - t_img.dagger()
    return kappa


def jw_map_hamiltonian(sys):
    """Qubit image of the second-quantized Hamiltonian, including the core
    energy on the identity string."""
    n = sys.n_spin_orbitals
    out = PauliSum.identity(n, sys.core_energy)
    for p in range(n):
        for q in range(n):
            if abs(sys.h1[p, q]) > COEFF_DROP:
                out = out + sys.h1[p, q] * jw_map_string(
                    ((p, True), (q, False)), n)
    for p in range(n):
        for q in range(p + 1, n):
            for r in range(n):
                for s in range(r + 1, n):
                    v = sys.v_antisym[p, q, r, s]
                    if abs(v) > COEFF_DROP:
                        # 1/4 sum over all pqrs = sum over p<q, r<s
                        out = out + v * jw_map_string(
                            ((p, True), (q, True), (s, False), (r, False)), n)
    return out


def mutually_commuting(pauli_sum):
    """True iff every pair of terms commutes (even number of positions with
    differing non-identity letters)."""
    strings = list(pauli_sum.terms)
    for i, s1 in enumerate(strings):
        for s2 in strings[i + 1:]:
            anti = sum(
                1 for a, b in zip(s1, s2) if a != "I" and b != "I" and a != b
            )
            if anti % 2:
                return False
    return True


@dataclass(frozen=True)
class ResourceCount:
    n_params: int
    n_cnot: int
    n_pauli_rotations: int

    def __add__(self, other):
        return ResourceCount(
            self.n_params + other.n_params,
            self.n_cnot + other.n_cnot,
            self.n_pauli_rotations + other.n_pauli_rotations,
        )


def count_resources(ansatz, n_qubits=None):
    """Parameter, CNOT and Pauli-rotation counts for one circuit execution.

    Every Pauli term of every generator image becomes one multi-qubit
    rotation; a weight-w rotation costs 2(w-1) CNOTs (weight-1 rotations
    cost none).
    """
    n = n_qubits if n_qubits is not None else ansatz.n_qubits
    n_rot = 0
    n_cnot = 0
    for gen in ansatz.generators():
        image = jw_map_generator(gen, n)
        for letters, _ in image.sorted_terms():
            w = image.weight(letters)
            n_rot += 1
            n_cnot += 2 * (w - 1) if w > 1 else 0
    return ResourceCount(ansatz.n_params, n_cnot, n_rot)


def emit_rotation_sequence(ansatz, n_qubits=None):
    """QASM-like text: one `exp(theta_k * c * P)` line per Pauli rotation in
    application order (c is the purely imaginary term coefficient)."""
    n = n_qubits if n_qubits is not None else ansatz.n_qubits
    lines = []
    for gen in ansatz.generators():
        image = jw_map_generator(gen, n)
        for letters, coeff in image.sorted_terms():
            lines.append(
                f"exp(theta_{gen.param_slot} * ({coeff.imag:+.12g}i) * {letters})"
            )
    return "\n".join(lines) + "\n"
