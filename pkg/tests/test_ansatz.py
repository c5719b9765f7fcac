"""Block assembly, baseline pools and parameter seeding."""

import numpy as np
import pytest

from compactvqe import (ScreeningConfig, ansatz_ir, ansatz_to_json,
                        assemble_compact, assemble_uccsd, assemble_uccsdt,
                        initial_parameters, jw_map_generator, run_screening)
from compactvqe.errors import LedgerInconsistencyError
from compactvqe.screening import ScreeningLedger


def test_single_double_ledger(h2):
    ledger = run_screening(h2, ScreeningConfig(1e-5, 1e-5, 1e-4))
    ansatz = assemble_compact(ledger)
    assert len(ansatz.blocks) == 1
    assert ansatz.singles_tail == ()
    assert ansatz.n_params == 1
    assert ansatz.initial_params[0] == pytest.approx(ledger.doubles[0].t1st)


def test_slot_bijection(lih):
    ledger = run_screening(lih, ScreeningConfig(1e-5, 1e-5, 1e-4))
    ansatz = assemble_compact(ledger)
    slots = [g.param_slot for g in ansatz.generators()]
    assert slots == list(range(ansatz.n_params))


def test_block_order_and_sigma_attachment(lih):
    ledger = run_screening(lih, ScreeningConfig(1e-5, 1e-5, 1e-4))
    ansatz = assemble_compact(ledger)
    # blocks descend in first-order amplitude magnitude
    mags = [abs(b.tau.seed) for b in ansatz.blocks]
    assert mags == sorted(mags, reverse=True)
    # every retained triple's selected scatterer lives in the owning block
    by_tau = {b.tau.creates + b.tau.destroys: b for b in ansatz.blocks}
    for t in ledger.triples:
        block = by_tau[t.selected.double.index]
        expected = (t.selected.scatterer.creations,
                    t.selected.scatterer.destructions)
        assert expected in [(s.creates, s.destroys) for s in block.sigmas]
    n_sigmas = sum(len(b.sigmas) for b in ansatz.blocks)
    assert n_sigmas == len(ledger.triples)
    assert len(ansatz.singles_tail) == ledger.n_s


def test_assembly_is_input_order_invariant(lih):
    ledger = run_screening(lih, ScreeningConfig(1e-5, 1e-5, 1e-4))
    reference = ansatz_to_json(assemble_compact(ledger))
    rng = np.random.default_rng(7)
    shuffled = ScreeningLedger(config=ledger.config,
                               n_spin_orbitals=ledger.n_spin_orbitals)
    shuffled.doubles = list(ledger.doubles)
    shuffled.triples = list(ledger.triples)
    shuffled.singles = list(ledger.singles)
    shuffled.scatterers = list(ledger.scatterers)
    rng.shuffle(shuffled.doubles)
    rng.shuffle(shuffled.triples)
    rng.shuffle(shuffled.singles)
    assert ansatz_to_json(assemble_compact(shuffled)) == reference


def test_sigma_does_not_commute_with_its_tau(bh):
    ledger = run_screening(bh, ScreeningConfig(1e-3, 1e-3, 1e-4))
    ansatz = assemble_compact(ledger)
    n = ansatz.n_qubits
    checked = 0
    for block in ansatz.blocks:
        tau_img = jw_map_generator(block.tau, n)
        for sigma in block.sigmas:
            # shared contractible index at the fermionic level
            assert set(sigma.creates + sigma.destroys) & set(
                block.tau.creates + block.tau.destroys)
            sig_img = jw_map_generator(sigma, n)
            comm = tau_img * sig_img - sig_img * tau_img
            assert len(comm) > 0
            checked += 1
    assert checked > 0


def test_missing_double_raises(lih):
    ledger = run_screening(lih, ScreeningConfig(1e-5, 1e-5, 1e-4))
    assert ledger.triples
    broken = ScreeningLedger(config=ledger.config,
                             n_spin_orbitals=ledger.n_spin_orbitals)
    owner = ledger.triples[0].selected.double.index
    broken.doubles = [c for c in ledger.doubles if c.index != owner]
    broken.triples = list(ledger.triples)
    with pytest.raises(LedgerInconsistencyError):
        assemble_compact(broken)


def test_doubles_only_limit(lih):
    # eps1 -> 0 with eps2, eps3 -> infinity degenerates to an amplitude-
    # ordered doubles-only disentangled pool
    ledger = run_screening(lih, ScreeningConfig(1e-12, 1e6, 1e6))
    ansatz = assemble_compact(ledger)
    assert all(not b.sigmas for b in ansatz.blocks)
    assert ansatz.singles_tail == ()
    assert len(ansatz.blocks) == ledger.n_d
    mags = [abs(b.tau.seed) for b in ansatz.blocks]
    assert mags == sorted(mags, reverse=True)


def test_baseline_parameter_counts(lih, bh, h2o):
    assert assemble_uccsd(lih).n_params == 92
    assert assemble_uccsd(bh).n_params == 117
    assert assemble_uccsd(h2o).n_params == 92
    assert assemble_uccsdt(lih).n_params == 188
    assert assemble_uccsdt(bh).n_params == 281


def test_h2_uccsdt_equals_uccsd(h2):
    # two electrons admit no triples
    assert assemble_uccsdt(h2).n_params == assemble_uccsd(h2).n_params == 3


def test_baseline_ordering_and_seeds(lih):
    ansatz = assemble_uccsd(lih)
    kinds = [b.tau.kind for b in ansatz.blocks]
    n_singles = kinds.count("cluster_single")
    assert all(k == "cluster_single" for k in kinds[:n_singles])
    assert all(k == "cluster_double" for k in kinds[n_singles:])
    vec = ansatz.initial_params
    assert np.all(vec[:n_singles] == 0.0)
    assert np.any(vec[n_singles:] != 0.0)
    # lexicographic within each rank
    singles_keys = [b.tau.destroys + b.tau.creates for b in ansatz.blocks[:n_singles]]
    assert singles_keys == sorted(singles_keys)


def test_initial_parameters_reseeding(h2):
    ledger = run_screening(h2, ScreeningConfig(1e-5, 1e-5, 1e-4))
    ansatz = assemble_compact(ledger)
    vec = initial_parameters(ansatz, ledger)
    assert np.allclose(vec, ansatz.initial_params)
    assert vec[0] == pytest.approx(ledger.doubles[0].t1st)


def test_seeded_energy_below_hf(lih):
    from compactvqe import jw_map_hamiltonian, prepare_reference
    from compactvqe.simulator import AnsatzSimulator

    ledger = run_screening(lih, ScreeningConfig(1e-5, 1e-5, 1e-4))
    ansatz = assemble_compact(ledger)
    sim = AnsatzSimulator(ansatz, jw_map_hamiltonian(lih), prepare_reference(lih))
    assert sim.energy(ansatz.initial_params) < lih.hf_energy


def test_scatterer_seeding_flag(lih):
    ledger = run_screening(lih, ScreeningConfig(1e-5, 1e-5, 1e-4))
    default = assemble_compact(ledger)
    seeded = assemble_compact(ledger, seed_scatterers=True)
    for block in default.blocks:
        for s in block.sigmas:
            assert s.seed == 0.0
    any_nonzero = any(s.seed != 0.0 for b in seeded.blocks for s in b.sigmas)
    assert any_nonzero
    for g in default.singles_tail + seeded.singles_tail:
        assert g.seed == 0.0


def test_ir_dump_format(h2):
    ledger = run_screening(h2, ScreeningConfig(1e-5, 1e-5, 1e-4))
    text = ansatz_ir(assemble_compact(ledger))
    lines = text.strip().split("\n")
    assert len(lines) == 1
    assert lines[0].startswith("slot   0  cluster_double +a1 +a3 -a2 -a0")
