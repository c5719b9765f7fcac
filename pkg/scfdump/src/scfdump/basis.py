"""STO-3G basis set data and contracted Gaussian construction.

Exponents and contraction coefficients are the standard published STO-3G
values (coefficients refer to normalized primitives).  Only the elements
needed for the committed fixtures are tabulated.
"""

from dataclasses import dataclass, field

import numpy as np

# element -> list of shells; each shell is ("S"|"SP", [exponents], [s coeffs], [p coeffs])
STO3G = {
    "H": [
        ("S", [3.425250914, 0.6239137298, 0.1688554040],
              [0.1543289673, 0.5353281423, 0.4446345422], None),
    ],
    "Li": [
        ("S", [16.11957475, 2.936200663, 0.7946504870],
              [0.1543289673, 0.5353281423, 0.4446345422], None),
        ("SP", [0.6362897469, 0.1478600533, 0.04808867840],
               [-0.09996722919, 0.3995128261, 0.7001154689],
               [0.1559162750, 0.6076837186, 0.3919573931]),
    ],
    "B": [
        ("S", [48.79111318, 8.887362172, 2.405267040],
              [0.1543289673, 0.5353281423, 0.4446345422], None),
        ("SP", [2.236956142, 0.5198204999, 0.1690617600],
               [-0.09996722919, 0.3995128261, 0.7001154689],
               [0.1559162750, 0.6076837186, 0.3919573931]),
    ],
    "O": [
        ("S", [130.7093200, 23.80886050, 6.443608313],
              [0.1543289673, 0.5353281423, 0.4446345422], None),
        ("SP", [5.033151319, 1.169596125, 0.3803889600],
               [-0.09996722919, 0.3995128261, 0.7001154689],
               [0.1559162750, 0.6076837186, 0.3919573931]),
    ],
}

NUCLEAR_CHARGE = {"H": 1, "Li": 3, "B": 5, "O": 8}

_DFACT = {-1: 1.0, 0: 1.0, 1: 1.0, 2: 3.0, 3: 15.0}


def _primitive_norm(alpha, lmn):
    l, m, n = lmn
    L = l + m + n
    num = (2.0 * alpha / np.pi) ** 1.5 * (4.0 * alpha) ** L
    den = _DFACT[2 * l - 1] * _DFACT[2 * m - 1] * _DFACT[2 * n - 1]
    return np.sqrt(num / den)


@dataclass
class ContractedGaussian:
    """One contracted Cartesian Gaussian basis function."""

    center: np.ndarray
    lmn: tuple
    exponents: np.ndarray
    coefficients: np.ndarray  # includes primitive norms; contraction renormalized
    label: str = ""
    norm_constant: float = field(default=1.0)

    @property
    def nprim(self):
        return len(self.exponents)


def _make_contracted(center, lmn, exps, coeffs, label):
    exps = np.asarray(exps, dtype=float)
    raw = np.asarray(coeffs, dtype=float) * np.array(
        [_primitive_norm(a, lmn) for a in exps]
    )
    bf = ContractedGaussian(np.asarray(center, dtype=float), lmn, exps, raw, label)
    # renormalize the contraction to unit self-overlap
    from .integrals import overlap

    s = overlap(bf, bf)
    bf.coefficients = raw / np.sqrt(s)
    bf.norm_constant = 1.0 / np.sqrt(s)
    return bf


def build_basis(atoms):
    """Build the STO-3G basis for a list of (element, xyz-in-bohr) atoms.

    Returns a list of ContractedGaussian in atom order, with p shells expanded
    in x, y, z order.
    """
    basis = []
    for element, xyz in atoms:
        if element not in STO3G:
            raise ValueError(f"no STO-3G data tabulated for element {element!r}")
        for ishell, (kind, exps, cs, cp) in enumerate(STO3G[element]):
            basis.append(
                _make_contracted(xyz, (0, 0, 0), exps, cs, f"{element} {ishell + 1}s")
            )
            if kind == "SP":
                for lmn, ax in (((1, 0, 0), "x"), ((0, 1, 0), "y"), ((0, 0, 1), "z")):
                    basis.append(
                        _make_contracted(
                            xyz, lmn, exps, cp, f"{element} {ishell + 1}p{ax}"
                        )
                    )
    return basis
