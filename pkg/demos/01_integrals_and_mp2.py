"""Load an FCIDUMP, expand to spin-orbitals and get HF/MP2 reference numbers.

Run from the repository root:  python demos/01_integrals_and_mp2.py
"""

from compactvqe import all_doubles, load_fcidump, mp2_energy, to_spin_orbitals

data = load_fcidump("fixtures/lih_1.600.fcidump")
print(f"spatial orbitals : {data.n_spatial_orbitals}")
print(f"electrons        : {data.n_electrons}")
print(f"core energy      : {data.core_energy:.10f} Ha")

system = to_spin_orbitals(data)
print(f"\nspin-orbitals    : {system.n_spin_orbitals} (blocked: alpha block first)")
print(f"occupied         : {system.occupied}")
print(f"virtual          : {system.virtual}")
print(f"E_HF             : {system.hf_energy:.10f} Ha")

# orbital energies come from the Fock diagonal, not from the file
print("\norbital energies (Ha):")
for p in range(system.n_spatial):
    print(f"  spatial {p}: {system.orbital_energy[p]: .6f}")

doubles = all_doubles(system)
e2 = mp2_energy(doubles)
print(f"\n{len(doubles)} nonzero canonical doubles")
print(f"E_MP2 correlation: {e2:.10f} Ha")
print(f"E_HF + E_MP2     : {system.hf_energy + e2:.10f} Ha")
