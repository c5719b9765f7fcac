"""Minimal-basis RHF driver that exports active-space FCIDUMP files."""

from .basis import build_basis
from .export import ActiveSpaceIntegrals, freeze_core, write_fcidump
from .molecules import DEFAULT_GRIDS, FROZEN, fixture_label, geometry
from .scf import ScfConvergenceError, ScfResult, run_rhf

__all__ = [
    "ActiveSpaceIntegrals",
    "DEFAULT_GRIDS",
    "FROZEN",
    "ScfConvergenceError",
    "ScfResult",
    "build_basis",
    "fixture_label",
    "freeze_core",
    "geometry",
    "run_rhf",
    "write_fcidump",
]
