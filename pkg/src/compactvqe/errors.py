"""Exception types raised across the package."""


class ParseError(ValueError):
    """Malformed FCIDUMP content; carries the offending line number."""

    def __init__(self, message, line_number=None):
        self.line_number = line_number
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)


class ConsistencyError(ValueError):
    """Duplicate integral records with conflicting values."""


class UnsupportedSystemError(ValueError):
    """System outside the supported closed-shell / active-space contract."""


class InvalidExcitationError(ValueError):
    """Repeated spin-orbital index inside one excitation index set."""


class DegeneracyError(ValueError):
    """Vanishing perturbative denominator for a would-be-retained candidate."""


class LedgerInconsistencyError(ValueError):
    """Screening ledger references an operator that is not present."""


class MappingError(ValueError):
    """Fermionic index outside the qubit register."""


class CapacityError(ValueError):
    """Problem size exceeds the configured dense-simulation cap."""


class StateError(ValueError):
    """Statevector violates a required invariant (e.g. not normalized)."""


class HermiticityError(ValueError):
    """Expectation value of a supposedly hermitian operator is not real."""


class DimensionError(ValueError):
    """Mismatched vector/register dimensions."""
