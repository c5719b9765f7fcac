"""Command line entry points: `generate` fixtures and `manifest` scan files."""

import argparse
import json
import sys
from pathlib import Path

from .basis import build_basis
from .export import freeze_core, write_fcidump
from .molecules import DEFAULT_GRIDS, FROZEN, fixture_label, geometry
from .scf import ScfConvergenceError, run_rhf


def generate_fixture(molecule, r, out_dir, conv_tol=1e-12, pattern=None):
    """Run RHF for one geometry and write its FCIDUMP; returns metadata."""
    atoms = geometry(molecule, r)
    basis = build_basis(atoms)
    scf = run_rhf(atoms, basis, conv_tol=conv_tol, pattern=pattern)
    active = freeze_core(scf, FROZEN[molecule])
    label = fixture_label(molecule, r)
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / f"{label}.fcidump"
    write_fcidump(active, path)
    rec = {
        "label": label,
        "molecule": molecule,
        "r": r,
        "fcidump": path.name,
        "n_orbitals": active.n_orbitals,
        "n_electrons": active.n_electrons,
        "n_frozen_spatial": FROZEN[molecule],
        "hf_energy": scf.energy,
        "core_energy": active.core_energy,
        "scf_iterations": scf.n_iter,
        "occupation_pattern": list(scf.pattern),
        "reference": "restricted closed-shell HF",
    }
    if scf.lower_solution_energy is not None:
        rec["lower_rhf_solution"] = {
            "energy": scf.lower_solution_energy,
            "note": "scan follows the equilibrium configuration; a lower "
                    "RHF solution with a different occupation exists here",
        }
    return rec


def cmd_generate(args):
    """Generate a fixture grid following one electronic configuration.

    The occupation pattern is determined at the first grid point (the global
    RHF minimum there) and pinned for the rest of the scan, so stretched
    geometries stay on the same state even past SCF solution crossings.
    """
    grid = args.grid if args.grid else DEFAULT_GRIDS[args.molecule]
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    records = []
    pattern = None
    for r in grid:
        rec = generate_fixture(args.molecule, r, out_dir, pattern=pattern)
        if pattern is None:
            pattern = tuple(rec["occupation_pattern"])
        records.append(rec)
        note = "  (lower RHF solution exists)" if "lower_rhf_solution" in rec else ""
        print(f"{rec['label']:>14s}  E_HF = {rec['hf_energy']: .10f}  "
              f"({rec['n_electrons']}e, {rec['n_orbitals']} orbitals, "
              f"{rec['scf_iterations']} SCF iterations){note}")
    meta_path = out_dir / f"{args.molecule}_fixtures.json"
    with open(meta_path, "w") as f:
        json.dump(records, f, indent=2)
    print(f"metadata -> {meta_path}")
    return 0


def cmd_manifest(args):
    """Emit a scan manifest covering a fixture grid for the VQE driver CLI."""
    out_dir = Path(args.fixture_dir)
    meta_path = out_dir / f"{args.molecule}_fixtures.json"
    with open(meta_path) as f:
        records = json.load(f)
    methods = []
    for m in args.methods.split("+"):
        if m.startswith("compact"):
            a, b, c = (float(x) for x in m[len("compact"):].strip("()").split(","))
            methods.append({"method": "compact", "compact": [a, b, c]})
        else:
            methods.append({"method": m})
    manifest = {
        "geometries": [
            {"label": rec["label"], "fcidump": str(out_dir / rec["fcidump"])}
            for rec in records
        ],
        "methods": methods,
    }
    with open(args.out, "w") as f:
        json.dump(manifest, f, indent=2)
    print(f"manifest with {len(manifest['geometries'])} geometries x "
          f"{len(methods)} methods -> {args.out}")
    return 0


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="scfdump",
        description="Generate active-space FCIDUMP fixtures from minimal-basis RHF",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_gen = sub.add_parser("generate", help="run RHF and write FCIDUMP fixtures")
    p_gen.add_argument("--molecule", required=True, choices=["h2", "lih", "bh", "h2o"])
    p_gen.add_argument("--grid", type=float, nargs="*", default=None,
                       help="bond lengths in Angstrom (h2o: factors of Re); "
                            "defaults to the built-in grid")
    p_gen.add_argument("--out-dir", required=True)
    p_gen.set_defaults(func=cmd_generate)

    p_man = sub.add_parser("manifest", help="emit a scan manifest for generated fixtures")
    p_man.add_argument("--molecule", required=True, choices=["h2", "lih", "bh", "h2o"])
    p_man.add_argument("--fixture-dir", required=True)
    p_man.add_argument("--methods", default="uccsd+compact(5,5,4)",
                       help="'+'-separated list, e.g. uccsd+uccsdt+compact(5,5,4)")
    p_man.add_argument("--out", required=True)
    p_man.set_defaults(func=cmd_manifest)

    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ScfConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
