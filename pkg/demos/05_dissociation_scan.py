"""Mini dissociation scan: screened ansatz vs static UCCSD along LiH stretch.

Reproduces the benchmark layout (energy error vs exact, parameter count,
CNOT count per geometry) on a three-point grid to keep the runtime short;
swap in the full fixture grid for production curves.  The same table comes
out of the command line via `compactvqe scan --manifest ...`.

Run from the repository root:  python demos/05_dissociation_scan.py
"""

from compactvqe import (ScreeningConfig, VqeOptions, assemble_compact,
                        assemble_uccsd, count_resources, fci_ground_state,
                        load_fcidump, run_screening, run_vqe, to_spin_orbitals)

GRID = ["1.600", "2.500", "4.000"]
OPTIONS = VqeOptions(grad_tol=1e-6)

print(f"{'R (A)':>6s} {'method':<15s} {'params':>6s} {'CNOTs':>6s} "
      f"{'E_VQE (Ha)':>16s} {'err vs exact':>13s}")
for r in GRID:
    system = to_spin_orbitals(load_fcidump(f"fixtures/lih_{r}.fcidump"))
    exact = fci_ground_state(system)
    ledger = run_screening(system, ScreeningConfig(1e-5, 1e-5, 1e-4))
    for label, ansatz in (("compact(5,5,4)", assemble_compact(ledger)),
                          ("uccsd", assemble_uccsd(system))):
        res = run_vqe(ansatz, system, OPTIONS)
        rc = count_resources(ansatz)
        print(f"{r:>6s} {label:<15s} {rc.n_params:>6d} {rc.n_cnot:>6d} "
              f"{res.energy:>16.10f} {res.energy - exact.energy:>13.3e}")
