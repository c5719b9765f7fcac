"""Fixture molecule geometries and scan grids.

All bond lengths are in Angstrom at the interface; conversion to bohr happens
here.  Diatomics are placed on the z axis with the heavy atom at the origin.
The restricted closed-shell reference is used for every geometry, including
stretched ones.
"""

import numpy as np

from .export import ANGSTROM_TO_BOHR

H2O_RE_ANGSTROM = 0.958
H2O_ANGLE_DEG = 104.4776

# frozen spatial orbitals per molecule (lowest RHF orbitals)
FROZEN = {"h2": 0, "lih": 0, "bh": 0, "h2o": 1}

DEFAULT_GRIDS = {
    "h2": [0.735],
    "lih": [1.0, 1.25, 1.5, 1.6, 1.75, 2.0, 2.25, 2.5, 2.75, 3.0, 3.25, 3.5, 3.75, 4.0],
    "bh": [1.0, 1.25, 1.5, 1.75, 2.0, 2.25, 2.5, 2.75, 3.0],
    # H2O grid points are multiples of the equilibrium OH distance
    "h2o": [1.0, 1.2, 1.4, 1.6, 1.8, 2.0, 2.2, 2.4],
}


def geometry(molecule, r):
    """Atom list (element, xyz-bohr) for the named molecule.

    For diatomics r is the bond length in Angstrom; for h2o it is the
    symmetric-stretch factor multiplying the equilibrium OH distance (the
    bond angle stays fixed).
    """
    if molecule == "h2":
        z = r * ANGSTROM_TO_BOHR
        return [("H", np.zeros(3)), ("H", np.array([0.0, 0.0, z]))]
    if molecule == "lih":
        z = r * ANGSTROM_TO_BOHR
        return [("Li", np.zeros(3)), ("H", np.array([0.0, 0.0, z]))]
    if molecule == "bh":
        z = r * ANGSTROM_TO_BOHR
        return [("B", np.zeros(3)), ("H", np.array([0.0, 0.0, z]))]
    if molecule == "h2o":
        d = r * H2O_RE_ANGSTROM * ANGSTROM_TO_BOHR
        half = np.deg2rad(H2O_ANGLE_DEG) / 2.0
        return [
            ("O", np.zeros(3)),
            ("H", np.array([d * np.sin(half), 0.0, d * np.cos(half)])),
            ("H", np.array([-d * np.sin(half), 0.0, d * np.cos(half)])),
        ]
    raise ValueError(f"unknown molecule {molecule!r}")


def fixture_label(molecule, r):
    if molecule == "h2o":
        return f"h2o_{r:.2f}re"
    return f"{molecule}_{r:.3f}"
