"""Compare circuit resources: screened dynamic ansatz vs static UCC pools.

Run from the repository root:  python demos/03_ansatz_and_resources.py
"""

from compactvqe import (ScreeningConfig, ansatz_ir, assemble_compact,
                        assemble_uccsd, assemble_uccsdt, count_resources,
                        load_fcidump, run_screening, to_spin_orbitals)

system = to_spin_orbitals(load_fcidump("fixtures/lih_4.000.fcidump"))

ledger = run_screening(system, ScreeningConfig(1e-5, 1e-5, 1e-4))
ansaetze = {
    "compact(5,5,4)": assemble_compact(ledger),
    "uccsd": assemble_uccsd(system),
    "uccsdt": assemble_uccsdt(system),
}

print(f"{'method':<16s} {'params':>7s} {'rotations':>10s} {'CNOTs':>8s}")
for name, ansatz in ansaetze.items():
    r = count_resources(ansatz)
    print(f"{name:<16s} {r.n_params:>7d} {r.n_pauli_rotations:>10d} {r.n_cnot:>8d}")

compact = ansaetze["compact(5,5,4)"]
multi = [b for b in compact.blocks if b.sigmas]
print(f"\n{len(compact.blocks)} operator blocks, {len(multi)} carry scatterers, "
      f"{len(compact.singles_tail)} singles in the tail")

block = multi[0]
ir_lines = ansatz_ir(compact).split("\n")
print("\nfirst block with scatterers (generator dump):")
for gen in block.generators():
    print(" ", ir_lines[gen.param_slot])
