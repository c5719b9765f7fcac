"""Walk the order-by-order screening cascade on stretched LiH.

Shows what each stage retains: first-order doubles, the scatterers that can
lift them to triples, the surviving triples with their unique pathways, and
the second-order singles.

Run from the repository root:  python demos/02_screening_cascade.py
"""

from compactvqe import (ScreeningConfig, build_orbital_tuple_set,
                        load_fcidump, run_screening, to_spin_orbitals)

system = to_spin_orbitals(load_fcidump("fixtures/lih_4.000.fcidump"))
config = ScreeningConfig(eps1=1e-5, eps2=1e-5, eps3=1e-4)
print(f"thresholds: {config.label}")

ledger = run_screening(system, config)

print(f"\nstage 1: {ledger.n_d} doubles with |t1| > eps1 (top 5 shown)")
for c in ledger.doubles[:5]:
    print(f"  {c.index}: t1 = {c.t1st: .6f}")

tuples = build_orbital_tuple_set(ledger.doubles)
print(f"\norbital tuple set: {len(tuples)} unique 2h1p/2p1h triples "
      f"(bound 4*N_D = {4 * ledger.n_d})")

print(f"\nstage 2: {len(ledger.scatterers)} scatterers with |v/Delta| > eps2")
print(f"         {len(ledger.triples)} triples with |total amplitude| > eps3")
for t in ledger.triples[:5]:
    sel = t.selected
    print(f"  {t.kbar}: total {t.total: .2e}, "
          f"{len(t.pathways)} pathways, selected double {sel.double.index}")

print(f"\n         {ledger.n_s} singles above eps3")
for s in ledger.singles:
    print(f"  {s.index}: contribution {s.contribution: .2e}")

total = ledger.n_d + len(ledger.triples) + ledger.n_s
print(f"\nvariational parameters: {ledger.n_d} doubles + "
      f"{len(ledger.triples)} scatterers + {ledger.n_s} singles = {total}")
