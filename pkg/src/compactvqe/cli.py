"""Command-line pipeline: screen / run / scan / fci / resources.

Thresholds are accepted either as raw values (--eps1 1e-5 ...) or as negative
base-10 logs (--compact 5,5,4).  Single runs emit JSON, scans emit CSV (one
row per geometry x method, manifest order preserved).  Exit codes: 0 success,
1 input error, 2 VQE did not converge.
"""

import argparse
import csv
import json
import sys
from dataclasses import asdict, dataclass
from datetime import datetime, timezone

import numpy as np

from .ansatz import assemble_compact, assemble_uccsd, assemble_uccsdt
from .errors import ParseError
from .fcidump import load_fcidump, to_spin_orbitals
from .fci import fci_ground_state
from .pauli import count_resources, jw_map_hamiltonian
from .screening import (ScreeningConfig, all_doubles, ledger_to_json,
                        mp2_energy, run_screening)
from .vqe import VqeOptions, run_vqe, write_trace_csv

__all__ = ["ScanRecord", "main"]

SCAN_COLUMNS = [
    "geometry_label", "fcidump_path", "method", "status",
    "e_hf", "e_mp2", "e_vqe", "e_fci", "error_vs_fci",
    "n_params", "n_cnot", "n_function_evals", "final_overlap",
]


@dataclass
class ScanRecord:
    geometry_label: str
    fcidump_path: str
    method: str
    e_hf: float
    e_mp2: float
    e_vqe: float
    e_fci: float
    error_vs_fci: float
    n_params: int
    n_cnot: int
    n_function_evals: int
    final_overlap: float
    status: str = "ok"


def _screening_config(args):
    if args.compact is not None:
        a, b, c = (float(x) for x in args.compact.split(","))
        eps1, eps2, eps3 = 10.0**-a, 10.0**-b, 10.0**-c
    else:
        eps1, eps2, eps3 = args.eps1, args.eps2, args.eps3
    return ScreeningConfig(
        eps1=eps1, eps2=eps2, eps3=eps3,
        max_order=args.max_order,
        include_quadruples=args.quadruples,
        delta_floor=args.delta_floor,
    )


def _load_system(path):
    return to_spin_orbitals(load_fcidump(path))


def _assemble(system, method, config):
    if method == "uccsd":
        return assemble_uccsd(system), None
    if method == "uccsdt":
        return assemble_uccsdt(system), None
    ledger = run_screening(system, config)
    return assemble_compact(ledger), ledger


def _method_label(method, config):
    return config.label if method == "compact" else method


def _write_json(doc, path):
    text = json.dumps(doc, indent=2) + "\n"
    if path:
        with open(path, "w") as f:
            f.write(text)
    else:
        print(text, end="")


def cmd_screen(args):
    system = _load_system(args.fcidump)
    config = _screening_config(args)
    ledger = run_screening(system, config)
    if args.out:
        with open(args.out, "w") as f:
            f.write(ledger_to_json(ledger) + "\n")
    print(f"{config.label}: N_D={ledger.n_d} scatterers={len(ledger.scatterers)} "
          f"triples={len(ledger.triples)} N_S={ledger.n_s} "
          f"quadruple_pathways={len(ledger.quadruples)}")
    if ledger.n_d == 0:
        print("warning: no doubles survived eps1; the ansatz would be empty",
              file=sys.stderr)
        return 0
    for t in ledger.triples:
        sel = t.selected
        print(f"  triple {t.kbar}: total {t.total: .3e} via double "
              f"{sel.double.index} + scatterer {sel.scatterer.index} "
              f"({len(t.pathways)} pathways)")
    return 0


def _run_single(fcidump_path, label, method, config, options, trace_path=None):
    system = _load_system(fcidump_path)
    ansatz, _ = _assemble(system, method, config)
    hamiltonian = jw_map_hamiltonian(system)
    fci = fci_ground_state(system)
    result = run_vqe(ansatz, system, options, fci=fci, hamiltonian=hamiltonian)
    resources = count_resources(ansatz)
    if trace_path:
        write_trace_csv(result, trace_path)
    record = ScanRecord(
        geometry_label=label,
        fcidump_path=str(fcidump_path),
        method=_method_label(method, config),
        e_hf=system.hf_energy,
        e_mp2=system.hf_energy + mp2_energy(all_doubles(system)),
        e_vqe=result.energy,
        e_fci=fci.energy,
        error_vs_fci=result.energy - fci.energy,
        n_params=resources.n_params,
        n_cnot=resources.n_cnot,
        n_function_evals=result.n_function_evals,
        final_overlap=result.trace[-1][2],
    )
    return record, result


def cmd_run(args):
    config = _screening_config(args)
    options = VqeOptions(grad_tol=args.grad_tol, max_function_evals=args.max_evals)
    record, result = _run_single(args.fcidump, args.label or args.fcidump,
                                 args.method, config, options, args.trace)
    doc = {k: v for k, v in asdict(record).items()}
    doc["converged"] = result.converged
    doc["metadata"] = {"timestamp": datetime.now(timezone.utc).isoformat()}
    _write_json(doc, args.out)
    return 0 if result.converged else 2


def _scan_cell(task):
    label, fcidump_path, method, config, options = task
    try:
        record, _ = _run_single(fcidump_path, label, method, config, options)
        return record
    except Exception as exc:  # noqa: BLE001 - a failed cell must not kill the scan
        return ScanRecord(
            geometry_label=label, fcidump_path=str(fcidump_path),
            method=_method_label(method, config),
            e_hf=float("nan"), e_mp2=float("nan"), e_vqe=float("nan"),
            e_fci=float("nan"), error_vs_fci=float("nan"),
            n_params=0, n_cnot=0, n_function_evals=0,
            final_overlap=float("nan"),
            status=f"error: {exc}",
        )


def cmd_scan(args):
    with open(args.manifest) as f:
        manifest = json.load(f)
    vqe_opts = manifest.get("vqe", {})
    options = VqeOptions(
        grad_tol=vqe_opts.get("grad_tol", args.grad_tol),
        max_function_evals=vqe_opts.get("max_evals", args.max_evals),
    )
    tasks = []
    for geo in manifest.get("geometries", []):
        for m in manifest.get("methods", []):
            method = m["method"]
            if method == "compact":
                a, b, c = m["compact"]
                config = ScreeningConfig(10.0**-a, 10.0**-b, 10.0**-c,
                                         max_order=m.get("max_order", 2),
                                         include_quadruples=m.get("quadruples", False),
                                         delta_floor=args.delta_floor)
            else:
                config = ScreeningConfig(1.0, 1.0, 1.0)
            tasks.append((geo["label"], geo["fcidump"], method, config, options))

    if args.workers > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=args.workers) as pool:
            records = list(pool.map(_scan_cell, tasks))
    else:
        records = [_scan_cell(t) for t in tasks]

    rows = [[getattr(r, col) for col in SCAN_COLUMNS] for r in records]
    out_stream = open(args.out, "w", newline="") if args.out else sys.stdout
    try:
        writer = csv.writer(out_stream)
        writer.writerow(SCAN_COLUMNS)
        writer.writerows(rows)
    finally:
        if args.out:
            out_stream.close()
    return 0


def cmd_fci(args):
    system = _load_system(args.fcidump)
    fci = fci_ground_state(system)
    doc = {
        "fcidump_path": str(args.fcidump),
        "e_fci": fci.energy,
        "e_hf": system.hf_energy,
        "correlation_energy": fci.energy - system.hf_energy,
        "sector": {"n_electrons": fci.sector[0], "sz": fci.sector[1]},
    }
    _write_json(doc, args.out)
    return 0


def cmd_resources(args):
    system = _load_system(args.fcidump)
    config = _screening_config(args)
    ansatz, _ = _assemble(system, args.method, config)
    r = count_resources(ansatz)
    doc = {
        "fcidump_path": str(args.fcidump),
        "method": _method_label(args.method, config),
        "n_params": r.n_params,
        "n_cnot": r.n_cnot,
        "n_pauli_rotations": r.n_pauli_rotations,
    }
    _write_json(doc, args.out)
    return 0


def _add_threshold_flags(p):
    p.add_argument("--compact", default=None, metavar="A,B,C",
                   help="negative log10 thresholds, e.g. 5,5,4")
    p.add_argument("--eps1", type=float, default=1e-5)
    p.add_argument("--eps2", type=float, default=1e-5)
    p.add_argument("--eps3", type=float, default=1e-4)
    p.add_argument("--max-order", type=int, default=2, choices=(1, 2, 3))
    p.add_argument("--quadruples", action="store_true")
    p.add_argument("--delta-floor", type=float, default=None)


def _add_vqe_flags(p):
    p.add_argument("--grad-tol", type=float, default=1e-7)
    p.add_argument("--max-evals", type=int, default=10000)


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="compactvqe",
        description="MBPT-screened dynamic-ansatz VQE benchmarking pipeline",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("screen", help="run the screening cascade, write the ledger")
    p.add_argument("--fcidump", required=True)
    _add_threshold_flags(p)
    p.add_argument("--out", default=None, help="ledger JSON path")
    p.set_defaults(func=cmd_screen)

    p = sub.add_parser("run", help="full pipeline on one geometry")
    p.add_argument("--fcidump", required=True)
    p.add_argument("--method", default="compact",
                   choices=("uccsd", "uccsdt", "compact"))
    p.add_argument("--label", default=None)
    _add_threshold_flags(p)
    _add_vqe_flags(p)
    p.add_argument("--out", default=None, help="record JSON path")
    p.add_argument("--trace", default=None, help="trace CSV path")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("scan", help="run a manifest of geometries x methods")
    p.add_argument("--manifest", required=True)
    _add_vqe_flags(p)
    p.add_argument("--delta-floor", type=float, default=None)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", default=None, help="CSV path (stdout if omitted)")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("fci", help="exact sector ground-state energy")
    p.add_argument("--fcidump", required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_fci)

    p = sub.add_parser("resources", help="parameter/CNOT counts without VQE")
    p.add_argument("--fcidump", required=True)
    p.add_argument("--method", default="compact",
                   choices=("uccsd", "uccsdt", "compact"))
    _add_threshold_flags(p)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_resources)

    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (OSError, ParseError, ValueError, IndexError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
