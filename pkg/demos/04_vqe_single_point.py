"""Full variational run on one geometry with convergence tracing.

Run from the repository root:  python demos/04_vqe_single_point.py
"""

from compactvqe import (ScreeningConfig, VqeOptions, assemble_compact,
                        fci_ground_state, load_fcidump, run_screening,
                        run_vqe, to_spin_orbitals)

system = to_spin_orbitals(load_fcidump("fixtures/lih_4.000.fcidump"))
exact = fci_ground_state(system)

ledger = run_screening(system, ScreeningConfig(1e-5, 1e-5, 1e-4))
ansatz = assemble_compact(ledger)
print(f"ansatz: {ansatz.label}, {ansatz.n_params} parameters")
print(f"seeded from first-order amplitudes; singles and scatterers start at 0")

result = run_vqe(ansatz, system, VqeOptions(grad_tol=1e-7), fci=exact)

print(f"\nE_HF        = {system.hf_energy:.10f} Ha")
print(f"E_VQE       = {result.energy:.10f} Ha "
      f"({result.n_function_evals} evaluations)")
print(f"E_FCI       = {exact.energy:.10f} Ha")
print(f"error       = {result.energy - exact.energy:.3e} Ha")
print(f"overlap     = {result.trace[-1][2]:.8f}")

print("\nconvergence trace (every 20th evaluation):")
print(f"{'eval':>6s} {'energy (Ha)':>18s} {'overlap':>10s}")
for idx, energy, overlap in result.trace[::20]:
    print(f"{idx:>6d} {energy:>18.10f} {overlap:>10.6f}")
