"""Slater-Condon rules checked against dense Jordan-Wigner matrices."""

import numpy as np
import pytest

from compactvqe.slater import (apply_annihilation, apply_creation,
                               determinant_from_excitation, excitation_degree,
                               hf_determinant, matrix_element,
                               sector_determinants)

from oracles import dense_hamiltonian, random_integral_system


def test_ladder_operations():
    # |0101> (orbitals 0 and 2 occupied)
    mask = 0b0101
    assert apply_annihilation(mask, 1) is None
    sign, out = apply_annihilation(mask, 2)
    assert out == 0b0001 and sign == -1  # one occupied orbital below
    sign, out = apply_creation(mask, 1)
    assert out == 0b0111 and sign == -1
    assert apply_creation(mask, 0) is None


def test_excitation_degree():
    assert excitation_degree(0b0101, 0b0101) == 0
    assert excitation_degree(0b0101, 0b0110) == 1
    assert excitation_degree(0b0101, 0b1010) == 2


def test_determinant_from_excitation_phase(h2):
    ref = hf_determinant(h2)
    assert ref == 0b0101
    sign, mask = determinant_from_excitation(ref, (0, 2), (1, 3))
    assert mask == 0b1010
    assert sign in (-1, 1)


def test_matrix_elements_match_dense_hamiltonian():
    # synthetic 3-spatial-orbital (6 spin-orbital) closed-shell system
    sys_ = random_integral_system(3, 2, seed=11)
    n = sys_.n_spin_orbitals
    dense = dense_hamiltonian(sys_.h1, sys_.v_antisym, 0.0, n)
    masks = list(range(2**n))
    rng = np.random.default_rng(2)
    pairs = [(int(a), int(b)) for a, b in rng.integers(0, 2**n, size=(400, 2))]
    pairs += [(m, m) for m in masks]
    for m1, m2 in pairs:
        if m1.bit_count() != m2.bit_count():
            continue  # Hamiltonian conserves particle number
        sc = matrix_element(sys_.h1, sys_.v_antisym, m1, m2)
        assert sc == pytest.approx(dense[m1, m2].real, abs=1e-10), (m1, m2)


def test_matrix_elements_beyond_double_substitution_vanish():
    sys_ = random_integral_system(4, 4, seed=3)
    m1 = 0b00001111
    m2 = 0b11110000
    assert matrix_element(sys_.h1, sys_.v_antisym, m1, m2) == 0.0


def test_sector_determinants_counts():
    dets = sector_determinants(6, 2, 2)
    assert len(dets) == 15 * 15
    assert dets == sorted(dets)
    for mask in dets:
        assert (mask & 0b111111).bit_count() == 2
        assert (mask >> 6).bit_count() == 2
