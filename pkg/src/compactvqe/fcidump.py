"""FCIDUMP parsing and spin-orbital integral assembly.

The FCIDUMP interchange format is a Fortran namelist header (NORB, NELEC,
optionally MS2/ORBSYM/ISYM, terminated by ``&END`` or ``/``) followed by
whitespace-separated records ``value i j k l`` with 1-based indices:

* ``value i j k l``  two-electron integral (ij|kl) in chemist notation,
* ``value i j 0 0``  one-electron integral h_ij,
* ``value i 0 0 0``  orbital energy (optional; ignored for tensor assembly),
* ``value 0 0 0 0``  core (nuclear repulsion + frozen core) energy.

Both ``E`` and Fortran ``D`` exponent markers are accepted.  Two-electron
values are stored once per chemist-canonical quartet (i>=j, k>=l,
(ij)>=(kl)) and all eight permutation images are expanded on read.

Spin-orbitals use blocked ordering: spatial orbital p maps to alpha
spin-orbital p and beta spin-orbital p + n_spatial.  The antisymmetrized
two-body tensor is physicist-notation <pq||rs>.  Orbital energies are
recomputed from the Fock diagonal rather than trusted from the file.
"""

import io
import re
import warnings
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import ConsistencyError, InvalidExcitationError, ParseError, UnsupportedSystemError

__all__ = [
    "FcidumpData",
    "IntegralSystem",
    "parse_fcidump",
    "load_fcidump",
    "serialize_fcidump",
    "to_spin_orbitals",
    "mp_denominator",
]

_DUPLICATE_TOL = 1e-10


def _canonical_two_body(i, j, k, l):
    if i < j:
        i, j = j, i
    if k < l:
        k, l = l, k
    if i * (i + 1) // 2 + j < k * (k + 1) // 2 + l:
        i, j, k, l = k, l, i, j
    return i, j, k, l


@dataclass
class FcidumpData:
    """Parsed FCIDUMP contents in spatial-orbital form (0-based indices)."""

    n_spatial_orbitals: int
    n_electrons: int
    ms2: int = 0
    orbital_symmetries: list = field(default_factory=list)
    core_energy: float = 0.0
    # canonical storage: expanded to dense arrays on demand
    one_body_entries: dict = field(default_factory=dict)   # (i>=j) -> h_ij
    two_body_entries: dict = field(default_factory=dict)   # canonical quartet -> (ij|kl)
    declared_orbital_energies: dict = field(default_factory=dict)

    @cached_property
    def one_body_spatial(self):
        n = self.n_spatial_orbitals
        h = np.zeros((n, n))
        for (i, j), v in self.one_body_entries.items():
            h[i, j] = h[j, i] = v
        h.flags.writeable = False
        return h

    @cached_property
    def two_body_spatial(self):
        n = self.n_spatial_orbitals
        g = np.zeros((n, n, n, n))
        for (i, j, k, l), v in self.two_body_entries.items():
            for p, q, r, s in (
                (i, j, k, l), (j, i, k, l), (i, j, l, k), (j, i, l, k),
                (k, l, i, j), (l, k, i, j), (k, l, j, i), (l, k, j, i),
            ):
                g[p, q, r, s] = v
        g.flags.writeable = False
        return g


def _store(entries, key, value, line_number):
    old = entries.get(key)
    if old is not None and abs(old - value) > _DUPLICATE_TOL:
        raise ConsistencyError(
            f"line {line_number}: conflicting duplicate entry for indices "
            f"{tuple(k + 1 for k in key)}: {old!r} vs {value!r}"
        )
    entries[key] = value


def parse_fcidump(text):
    """Parse FCIDUMP text (a string or text stream) into FcidumpData."""
    if isinstance(text, str):
        stream = io.StringIO(text)
    else:
        stream = text

    header_lines = []
    line_number = 0
    terminated = False
    for line in stream:
        line_number += 1
        header_lines.append(line)
        stripped = line.strip()
        if "&END" in stripped.upper() or stripped == "/" or stripped.endswith("/"):
            terminated = True
            break
    if not terminated:
        raise ParseError("namelist header not terminated by &END or /", line_number)

    header = " ".join(header_lines)
    header = header.split("&END")[0].split("&end")[0].rstrip("/ \n")

    def header_int(name, required=False, default=0):
        m = re.search(rf"{name}\s*=\s*([-+]?\d+)", header, re.IGNORECASE)
        if m is None:
            if required:
                raise ParseError(f"header is missing {name}", line_number)
            return default
        return int(m.group(1))

    norb = header_int("NORB", required=True)
    nelec = header_int("NELEC", required=True)
    ms2 = header_int("MS2")
    orbsym = []
    m = re.search(r"ORBSYM\s*=\s*([0-9,\s]+)", header, re.IGNORECASE)
    if m is not None:
        orbsym = [int(tok) for tok in m.group(1).replace(",", " ").split()]

    data = FcidumpData(
        n_spatial_orbitals=norb,
        n_electrons=nelec,
        ms2=ms2,
        orbital_symmetries=orbsym,
    )
    core_entries = {}

    for line in stream:
        line_number += 1
        parts = line.split()
        if not parts:
            continue
        if len(parts) != 5:
            raise ParseError(f"expected 5 fields, got {len(parts)}", line_number)
        try:
            value = float(parts[0].replace("D", "E").replace("d", "e"))
            i, j, k, l = (int(p) for p in parts[1:])
        except ValueError as exc:
            raise ParseError(str(exc), line_number) from None
        for idx in (i, j, k, l):
            if idx < 0 or idx > norb:
                raise IndexError(
                    f"line {line_number}: orbital index {idx} outside 1..{norb}"
                )
        if i == 0:
            if (j, k, l) != (0, 0, 0):
                raise ParseError("zero first index with nonzero trailing indices", line_number)
            _store(core_entries, (), value, line_number)
            data.core_energy = value
        elif k == 0:
            if l != 0:
                raise ParseError("one-body record with nonzero fourth index", line_number)
            if j == 0:
                data.declared_orbital_energies[i - 1] = value
            else:
                key = (max(i, j) - 1, min(i, j) - 1)
                _store(data.one_body_entries, key, value, line_number)
        else:
            if j == 0 or l == 0:
                raise ParseError("two-body record with a zero inner index", line_number)
            key = _canonical_two_body(i - 1, j - 1, k - 1, l - 1)
            _store(data.two_body_entries, key, value, line_number)
    return data


def load_fcidump(path):
    with open(path) as f:
        return parse_fcidump(f)


def serialize_fcidump(data):
    """Render FcidumpData back to FCIDUMP text (canonical entries only)."""
    n = data.n_spatial_orbitals
    orbsym = data.orbital_symmetries or [1] * n
    lines = [
        f" &FCI NORB={n},NELEC={data.n_electrons},MS2={data.ms2},",
        "  ORBSYM=" + ",".join(str(s) for s in orbsym) + ",",
        " &END",
    ]
    for (i, j, k, l), v in sorted(data.two_body_entries.items()):
        lines.append(f" {v: .16E} {i + 1:4d} {j + 1:4d} {k + 1:4d} {l + 1:4d}")
    for (i, j), v in sorted(data.one_body_entries.items()):
        lines.append(f" {v: .16E} {i + 1:4d} {j + 1:4d}    0    0")
    for i, v in sorted(data.declared_orbital_energies.items()):
        lines.append(f" {v: .16E} {i + 1:4d}    0    0    0")
    lines.append(f" {data.core_energy: .16E}    0    0    0    0")
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class IntegralSystem:
    """Spin-orbital integrals and reference-determinant data.

    Blocked spin order: alpha spin-orbitals 0..n_spatial-1, then beta.
    ``v_antisym[p,q,r,s]`` is the antisymmetrized physicist-notation
    <pq||rs>; ``orbital_energy`` is the Fock diagonal over the reference
    occupation.
    """

    n_spin_orbitals: int
    n_electrons: int
    occupied: tuple
    virtual: tuple
    orbital_energy: np.ndarray
    h1: np.ndarray
    v_antisym: np.ndarray
    core_energy: float
    spin_order: str = "blocked"

    @property
    def n_spatial(self):
        return self.n_spin_orbitals // 2

    def spin(self, p):
        """0 for alpha, 1 for beta."""
        return 0 if p < self.n_spatial else 1

    @cached_property
    def hf_energy(self):
        occ = list(self.occupied)
        e = self.core_energy + sum(self.h1[i, i] for i in occ)
        e += 0.5 * sum(self.v_antisym[i, j, i, j] for i in occ for j in occ)
        return float(e)

    def hf_energy_from_orbital_energies(self):
        """HF energy via eps_i minus the double-counted two-body part."""
        occ = list(self.occupied)
        e = self.core_energy + sum(self.orbital_energy[i] for i in occ)
        e -= 0.5 * sum(self.v_antisym[i, j, i, j] for i in occ for j in occ)
        return float(e)


def to_spin_orbitals(data, n_frozen_spatial=0):
    """Expand spatial FCIDUMP integrals into an IntegralSystem.

    The input dump must already describe the active space: freezing here is
    rejected because core folding belongs to the integral generator.
    """
    if n_frozen_spatial != 0:
        raise UnsupportedSystemError(
            "freezing is handled by the integral generator; the FCIDUMP must "
            "already be an active-space dump (n_frozen_spatial must be 0)"
        )
    if data.n_electrons % 2 != 0:
        raise UnsupportedSystemError("odd electron count: only closed shells supported")
    if data.ms2 != 0:
        raise UnsupportedSystemError("MS2 != 0: only closed shells supported")

    n = data.n_spatial_orbitals
    nso = 2 * n
    spat = np.concatenate([np.arange(n), np.arange(n)])
    spin = np.concatenate([np.zeros(n, dtype=int), np.ones(n, dtype=int)])

    h_sp = data.one_body_spatial
    h1 = h_sp[np.ix_(spat, spat)] * (spin[:, None] == spin[None, :])

    g_sp = data.two_body_spatial
    chem_so = (
        g_sp[np.ix_(spat, spat, spat, spat)]
        * (spin[:, None] == spin[None, :])[:, :, None, None]
        * (spin[:, None] == spin[None, :])[None, None, :, :]
    )
    # <pq|rs> = (pr|qs);  <pq||rs> = <pq|rs> - <pq|sr>
    v = chem_so.transpose(0, 2, 1, 3) - chem_so.transpose(0, 2, 3, 1)

    nocc = data.n_electrons // 2
    occupied = tuple(range(nocc)) + tuple(range(n, n + nocc))
    virtual = tuple(range(nocc, n)) + tuple(range(n + nocc, nso))

    occ = list(occupied)
    eps = np.array([h1[p, p] + sum(v[p, i, p, i] for i in occ) for p in range(nso)])

    if data.declared_orbital_energies:
        for i, e_decl in data.declared_orbital_energies.items():
            if abs(e_decl - eps[i]) > 1e-6:
                warnings.warn(
                    f"declared orbital energy for orbital {i + 1} "
                    f"({e_decl:.8f}) disagrees with the recomputed Fock "
                    f"diagonal ({eps[i]:.8f})",
                    stacklevel=2,
                )

    h1.flags.writeable = False
    v.flags.writeable = False
    eps.flags.writeable = False
    return IntegralSystem(
        n_spin_orbitals=nso,
        n_electrons=data.n_electrons,
        occupied=occupied,
        virtual=virtual,
        orbital_energy=eps,
        h1=h1,
        v_antisym=v,
        core_energy=data.core_energy,
    )


def mp_denominator(sys, holes, particles):
    """Orbital-energy denominator sum(eps over holes) - sum(eps over particles).

    The two index lists are the electron-destruction and electron-creation
    sets of an operator string; for plain excitations they are the hole and
    particle tuples, for scatterers they may mix occupancies.
    """
    holes = list(holes)
    particles = list(particles)
    if len(set(holes)) != len(holes) or len(set(particles)) != len(particles):
        raise InvalidExcitationError(
            f"repeated index within one list: holes={holes}, particles={particles}"
        )
    return float(sum(sys.orbital_energy[h] for h in holes)
                 - sum(sys.orbital_energy[p] for p in particles))
