"""FCIDUMP parsing, spin-orbital expansion and MP denominators."""

import numpy as np
import pytest

from compactvqe import (load_fcidump, mp2_energy, mp_denominator,
                        parse_fcidump, serialize_fcidump, to_spin_orbitals)
from compactvqe.errors import (ConsistencyError, InvalidExcitationError,
                               ParseError, UnsupportedSystemError)
from compactvqe.screening import all_doubles

from conftest import fixture_path

H2_HEADER = " &FCI NORB=2,NELEC=2,MS2=0,\n  ORBSYM=1,1,\n &END\n"


def test_parse_core_energy_matches_point_charge():
    # 1/R for two protons at 0.735 Angstrom
    r_bohr = 0.735 / 0.529177210903
    text = H2_HEADER + f" {1.0 / r_bohr: .16E} 0 0 0 0\n"
    data = parse_fcidump(text)
    assert data.core_energy == pytest.approx(1.0 / r_bohr, abs=1e-15)
    # the committed fixture was generated the same way
    fixture = load_fcidump(fixture_path("h2_0.735"))
    assert fixture.core_energy == pytest.approx(1.0 / r_bohr, abs=1e-12)


def test_parse_empty_body():
    data = parse_fcidump(H2_HEADER)
    assert data.core_energy == 0.0
    assert np.all(data.one_body_spatial == 0.0)
    assert np.all(data.two_body_spatial == 0.0)


def test_parse_index_out_of_range():
    with pytest.raises(IndexError):
        parse_fcidump(H2_HEADER + " 0.5 3 1 0 0\n")


def test_parse_fortran_exponent_markers():
    data = parse_fcidump(H2_HEADER + " 1.0D-08 1 1 0 0\n -2.5d-01 2 2 0 0\n")
    assert data.one_body_spatial[0, 0] == pytest.approx(1.0e-8)
    assert data.one_body_spatial[1, 1] == pytest.approx(-0.25)


def test_parse_slash_terminated_header():
    data = parse_fcidump(" &FCI NORB=2,NELEC=2\n /\n 0.5 1 1 0 0\n")
    assert data.n_spatial_orbitals == 2
    assert data.one_body_spatial[0, 0] == 0.5


def test_parse_errors_carry_line_numbers():
    with pytest.raises(ParseError) as err:
        parse_fcidump(H2_HEADER + " 0.5 1 1 0 0\n nonsense 1 1\n")
    assert err.value.line_number == 5

    with pytest.raises(ParseError):
        parse_fcidump(" &FCI NELEC=2 &END\n")  # missing NORB

    with pytest.raises(ParseError):
        parse_fcidump(" &FCI NORB=2,NELEC=2\n 0.5 1 1 0 0\n")  # unterminated


def test_duplicate_entries():
    base = H2_HEADER + " 0.5 2 1 2 1\n"
    # consistent duplicate (permutation image) is fine
    parse_fcidump(base + " 0.5 1 2 1 2\n")
    with pytest.raises(ConsistencyError):
        parse_fcidump(base + " 0.6 1 2 1 2\n")


def test_roundtrip_serialization():
    original = load_fcidump(fixture_path("lih_1.600"))
    recovered = parse_fcidump(serialize_fcidump(original))
    assert recovered.n_spatial_orbitals == original.n_spatial_orbitals
    assert recovered.n_electrons == original.n_electrons
    assert recovered.core_energy == pytest.approx(original.core_energy, abs=1e-12)
    assert set(recovered.two_body_entries) == set(original.two_body_entries)
    for key, val in original.two_body_entries.items():
        assert recovered.two_body_entries[key] == pytest.approx(val, abs=1e-12)
    for key, val in original.one_body_entries.items():
        assert recovered.one_body_entries[key] == pytest.approx(val, abs=1e-12)


def test_two_body_eightfold_symmetry():
    data = load_fcidump(fixture_path("h2o_1.00re"))
    g = data.two_body_spatial
    rng = np.random.default_rng(0)
    n = data.n_spatial_orbitals
    for _ in range(50):
        i, j, k, l = rng.integers(0, n, 4)
        ref = g[i, j, k, l]
        assert g[j, i, k, l] == ref
        assert g[i, j, l, k] == ref
        assert g[k, l, i, j] == ref


def test_spin_orbital_dimensions(h2, lih, h2o):
    assert h2.n_spin_orbitals == 4
    assert h2.occupied == (0, 2)
    assert h2.virtual == (1, 3)
    # 12 spin-orbitals spanned by 4 electrons
    assert (lih.n_spin_orbitals, lih.n_electrons) == (12, 4)
    # frozen-core system: 8 electrons in 12 spin-orbitals
    assert (h2o.n_spin_orbitals, h2o.n_electrons) == (12, 8)


def test_rejects_open_shell_and_freezing():
    text = " &FCI NORB=2,NELEC=3,MS2=1, &END\n"
    with pytest.raises(UnsupportedSystemError):
        to_spin_orbitals(parse_fcidump(text))
    data = load_fcidump(fixture_path("h2_0.735"))
    with pytest.raises(UnsupportedSystemError):
        to_spin_orbitals(data, n_frozen_spatial=1)


def test_antisymmetry_invariant(lih):
    v = lih.v_antisym
    rng = np.random.default_rng(1)
    n = lih.n_spin_orbitals
    for _ in range(100):
        p, q, r, s = rng.integers(0, n, 4)
        assert v[p, q, r, s] == pytest.approx(-v[q, p, r, s], abs=1e-12)
        assert v[p, q, r, s] == pytest.approx(-v[p, q, s, r], abs=1e-12)


def test_spin_forbidden_blocks_vanish(lih):
    n_sp = lih.n_spatial
    # alpha-alpha -> alpha-beta blocks must be exactly zero
    assert np.allclose(lih.v_antisym[:n_sp, :n_sp, :n_sp, n_sp:], 0.0)
    assert np.allclose(lih.h1[:n_sp, n_sp:], 0.0)


def test_alpha_beta_exchange_symmetry(lih):
    n = lih.n_spatial
    swap = np.concatenate([np.arange(n, 2 * n), np.arange(n)])
    assert np.allclose(lih.h1, lih.h1[np.ix_(swap, swap)], atol=1e-12)
    assert np.allclose(lih.v_antisym,
                       lih.v_antisym[np.ix_(swap, swap, swap, swap)], atol=1e-12)


def test_hf_energy_internal_consistency(h2, lih, h2o, bh):
    for sys_ in (h2, lih, h2o, bh):
        assert sys_.hf_energy == pytest.approx(
            sys_.hf_energy_from_orbital_energies(), abs=1e-8)


def test_hf_energy_matches_generator_metadata(lih, fixture_metadata):
    assert lih.hf_energy == pytest.approx(
        fixture_metadata["lih_1.600"]["hf_energy"], abs=1e-8)


def test_declared_orbital_energy_mismatch_warns():
    text = H2_HEADER + " 0.9 1 0 0 0\n -1.2563390737521407 1 1 0 0\n"
    data = parse_fcidump(text)
    with pytest.warns(UserWarning):
        to_spin_orbitals(data)
    # declared energies never enter the tensors
    assert data.one_body_spatial[0, 0] == pytest.approx(-1.2563390737521407)


def test_mp_denominator(h2, lih):
    assert mp_denominator(h2, [], []) == 0.0
    eps = h2.orbital_energy
    assert mp_denominator(h2, [0, 2], [1, 3]) == pytest.approx(
        2.0 * (eps[0] - eps[1]), abs=1e-12)
    with pytest.raises(InvalidExcitationError):
        mp_denominator(h2, [0, 0], [1, 3])

    # independent recomputation for the lowest-gap LiH double: Fock diagonal
    # built directly from the raw FCIDUMP tensors
    data = load_fcidump(fixture_path("lih_1.600"))
    h, g = data.one_body_spatial, data.two_body_spatial
    nocc = data.n_electrons // 2
    eps_spatial = [
        h[p, p] + sum(2.0 * g[p, p, i, i] - g[p, i, i, p] for i in range(nocc))
        for p in range(data.n_spatial_orbitals)
    ]
    # spatial double (1,1) -> (2,2): spin-orbital holes (1a,1b), particles (2a,2b)
    expected = 2.0 * (eps_spatial[1] - eps_spatial[2])
    assert mp_denominator(lih, [1, 7], [2, 8]) == pytest.approx(expected, abs=1e-12)


def test_mp2_invariant_under_body_line_permutation():
    path = fixture_path("lih_1.600")
    text = path.read_text().splitlines()
    header, body = text[:4], text[4:]
    ref = mp2_energy(all_doubles(to_spin_orbitals(parse_fcidump("\n".join(text)))))
    rng = np.random.default_rng(5)
    shuffled = list(body)
    rng.shuffle(shuffled)
    permuted = mp2_energy(all_doubles(to_spin_orbitals(
        parse_fcidump("\n".join(header + shuffled)))))
    assert permuted == pytest.approx(ref, abs=1e-12)
