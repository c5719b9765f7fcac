"""MBPT-screened dynamic ansatz construction and statevector VQE benchmarking.

Pipeline: FCIDUMP integrals -> spin-orbital tensors -> order-by-order
screening of doubles, scatterers, triples and singles -> blocked disentangled
ansatz -> Jordan-Wigner circuits -> exact statevector VQE with analytic
gradients, referenced against sector-exact diagonalization.
"""

from .ansatz import (Ansatz, Generator, OperatorBlock, ansatz_ir,
                     ansatz_to_json, assemble_compact, assemble_uccsd,
                     assemble_uccsdt, initial_parameters)
from .fci import FciResult, fci_ground_state, overlap_with_fci
from .fcidump import (FcidumpData, IntegralSystem, load_fcidump,
                      mp_denominator, parse_fcidump, serialize_fcidump,
                      to_spin_orbitals)
from .pauli import (PauliSum, ResourceCount, count_resources,
                    jw_map_generator, jw_map_hamiltonian, mutually_commuting)
from .screening import (DoublesCandidate, Scatterer, ScreeningConfig,
                        ScreeningLedger, SinglesCandidate, TripleCandidate,
                        all_doubles, build_orbital_tuple_set, ledger_to_json,
                        mp2_energy, run_screening, screen_doubles,
                        screen_quadruples, screen_scatterers, screen_singles,
                        screen_triples)
from .simulator import (AnsatzSimulator, Statevector, apply_generator,
                        energy_and_gradient, expectation, prepare_reference)
from .vqe import VqeOptions, VqeResult, run_vqe, write_trace_csv

__version__ = "0.1.0"

__all__ = [
    "Ansatz", "AnsatzSimulator", "DoublesCandidate", "FciResult",
    "FcidumpData", "Generator", "IntegralSystem", "OperatorBlock", "PauliSum",
    "ResourceCount", "Scatterer", "ScreeningConfig", "ScreeningLedger",
    "SinglesCandidate", "Statevector", "TripleCandidate", "VqeOptions",
    "VqeResult", "all_doubles", "ansatz_ir", "ansatz_to_json",
    "apply_generator", "assemble_compact", "assemble_uccsd",
    "assemble_uccsdt", "build_orbital_tuple_set", "count_resources",
    "energy_and_gradient", "expectation", "fci_ground_state",
    "initial_parameters", "jw_map_generator", "jw_map_hamiltonian",
    "ledger_to_json", "load_fcidump", "mp2_energy", "mp_denominator",
    "mutually_commuting", "overlap_with_fci", "parse_fcidump",
    "prepare_reference", "run_screening", "run_vqe", "screen_doubles",
    "screen_quadruples", "screen_scatterers", "screen_singles",
    "screen_triples", "serialize_fcidump", "to_spin_orbitals", "write_trace_csv",
]
