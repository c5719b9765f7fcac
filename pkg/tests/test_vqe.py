"""Variational loop behavior, traces and bounds."""

import numpy as np
import pytest

from compactvqe import (ScreeningConfig, VqeOptions, assemble_compact,
                        assemble_uccsd, fci_ground_state, run_screening,
                        run_vqe, write_trace_csv)
from compactvqe.ansatz import Ansatz


def test_zero_parameter_ansatz_returns_hf(h2):
    result = run_vqe(Ansatz((), (), 4, label="empty"), h2)
    assert result.energy == pytest.approx(h2.hf_energy, abs=1e-12)
    assert result.n_function_evals == 1
    assert result.converged


def test_h2_uccsd_reaches_fci(h2):
    fci = fci_ground_state(h2)
    result = run_vqe(assemble_uccsd(h2), h2, fci=fci)
    assert result.energy == pytest.approx(fci.energy, abs=1e-9)
    assert result.converged
    assert result.trace[-1][2] == pytest.approx(1.0, abs=1e-9)


def test_trace_monotone_envelope_and_bound(lih):
    fci = fci_ground_state(lih)
    ledger = run_screening(lih, ScreeningConfig(1e-4, 1e-4, 1e-3))
    result = run_vqe(assemble_compact(ledger), lih,
                     VqeOptions(max_function_evals=60), fci=fci)
    energies = [e for _, e, _ in result.trace]
    running = np.minimum.accumulate(energies)
    assert np.all(np.diff(running) <= 1e-12)
    assert all(e >= fci.energy - 1e-9 for e in energies)
    assert all(ov is None or 0.0 <= ov <= 1.0 + 1e-12 for _, _, ov in result.trace)


def test_restart_determinism(lih):
    ledger = run_screening(lih, ScreeningConfig(1e-4, 1e-4, 1e-3))
    a = run_vqe(assemble_compact(ledger), lih, VqeOptions(max_function_evals=40))
    b = run_vqe(assemble_compact(ledger), lih, VqeOptions(max_function_evals=40))
    assert a.trace == b.trace
    assert np.array_equal(a.params, b.params)


def test_eval_budget_respected(lih):
    ledger = run_screening(lih, ScreeningConfig(1e-5, 1e-5, 1e-4))
    result = run_vqe(assemble_compact(ledger), lih,
                     VqeOptions(max_function_evals=5))
    assert result.n_function_evals <= 5 + 2  # scipy may finish the line search
    assert not result.converged


def test_options_validation():
    with pytest.raises(ValueError):
        VqeOptions(grad_tol=-1.0)
    with pytest.raises(ValueError):
        VqeOptions(optimizer="adam")


def test_trace_csv_roundtrip(h2, tmp_path):
    fci = fci_ground_state(h2)
    result = run_vqe(assemble_uccsd(h2), h2, fci=fci)
    path = tmp_path / "trace.csv"
    write_trace_csv(result, path)
    lines = path.read_text().strip().split("\n")
    assert lines[0] == "eval_index,energy,overlap"
    assert len(lines) == len(result.trace) + 1
    last = lines[-1].split(",")
    assert float(last[1]) == pytest.approx(result.energy, abs=1e-10)
    assert float(last[2]) == pytest.approx(1.0, abs=1e-9)
