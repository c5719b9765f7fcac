"""Command-line pipeline: subcommands, formats, exit codes."""

import csv
import json

import pytest

from compactvqe.cli import SCAN_COLUMNS, main

from conftest import fixture_path

H2 = str(fixture_path("h2_0.735"))


def run_cli(*argv):
    return main(list(argv))


def test_screen_h2(capsys, tmp_path):
    out = tmp_path / "ledger.json"
    code = run_cli("screen", "--fcidump", H2, "--compact", "5,5,4",
                   "--out", str(out))
    assert code == 0
    printed = capsys.readouterr().out
    assert "N_D=1" in printed and "N_S=0" in printed and "triples=0" in printed
    ledger = json.loads(out.read_text())
    assert ledger["counts"] == {"n_d": 1, "n_s": 0, "scatterers": 0,
                                "triples": 0, "quadruple_pathways": 0}
    assert ledger["config"]["label"] == "compact(5,5,4)"


def test_screen_empty_warns_but_succeeds(capsys):
    code = run_cli("screen", "--fcidump", H2, "--eps1", "1e6",
                   "--eps2", "1e6", "--eps3", "1e6")
    assert code == 0
    assert "empty" in capsys.readouterr().err


def test_run_h2_uccsd(tmp_path):
    out = tmp_path / "record.json"
    trace = tmp_path / "trace.csv"
    code = run_cli("run", "--fcidump", H2, "--method", "uccsd",
                   "--label", "h2", "--out", str(out), "--trace", str(trace))
    assert code == 0
    record = json.loads(out.read_text())
    assert record["method"] == "uccsd"
    assert record["n_params"] == 3
    assert abs(record["error_vs_fci"]) < 1e-9
    assert record["error_vs_fci"] >= -1e-9
    assert record["converged"] is True
    assert record["final_overlap"] == pytest.approx(1.0, abs=1e-9)
    assert "timestamp" in record["metadata"]
    assert trace.read_text().startswith("eval_index,energy,overlap")


def test_run_output_deterministic_modulo_metadata(tmp_path):
    docs = []
    for name in ("a.json", "b.json"):
        out = tmp_path / name
        assert run_cli("run", "--fcidump", H2, "--method", "compact",
                       "--compact", "5,5,4", "--label", "h2",
                       "--out", str(out)) == 0
        doc = json.loads(out.read_text())
        doc.pop("metadata")
        docs.append(json.dumps(doc, sort_keys=True))
    assert docs[0] == docs[1]


def test_resources_h2_and_lih(capsys):
    assert run_cli("resources", "--fcidump", H2, "--method", "uccsd") == 0
    doc = json.loads(capsys.readouterr().out)
    # 2 weight-2 singles and 1 double under the 2(w-1) staircase rule
    assert doc["n_params"] == 3
    assert doc["n_cnot"] == 56
    assert doc["n_pauli_rotations"] == 12

    assert run_cli("resources", "--fcidump", str(fixture_path("lih_1.600")),
                   "--method", "uccsdt") == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["n_params"] == 188


def test_fci_command(capsys):
    assert run_cli("fci", "--fcidump", H2) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["e_fci"] < doc["e_hf"]
    assert doc["sector"] == {"n_electrons": 2, "sz": 0.0}


def test_scan_manifest(tmp_path):
    manifest = {
        "geometries": [{"label": "h2", "fcidump": H2}],
        "methods": [{"method": "uccsd"},
                    {"method": "compact", "compact": [5, 5, 4]}],
    }
    mpath = tmp_path / "manifest.json"
    mpath.write_text(json.dumps(manifest))
    out = tmp_path / "scan.csv"
    assert run_cli("scan", "--manifest", str(mpath), "--out", str(out)) == 0
    rows = list(csv.DictReader(out.open()))
    assert [r["method"] for r in rows] == ["uccsd", "compact(5,5,4)"]
    assert all(r["status"] == "ok" for r in rows)
    assert float(rows[0]["error_vs_fci"]) < 1e-9
    assert int(rows[1]["n_params"]) == 1


def test_scan_parallel_workers_preserve_order(tmp_path):
    manifest = {
        "geometries": [{"label": "h2", "fcidump": H2}],
        "methods": [{"method": "uccsd"},
                    {"method": "compact", "compact": [5, 5, 4]}],
    }
    mpath = tmp_path / "manifest.json"
    mpath.write_text(json.dumps(manifest))
    serial, parallel = tmp_path / "serial.csv", tmp_path / "parallel.csv"
    assert run_cli("scan", "--manifest", str(mpath), "--out", str(serial)) == 0
    assert run_cli("scan", "--manifest", str(mpath), "--workers", "2",
                   "--out", str(parallel)) == 0
    assert serial.read_text() == parallel.read_text()


def test_scan_empty_manifest(tmp_path):
    mpath = tmp_path / "manifest.json"
    mpath.write_text(json.dumps({"geometries": [], "methods": []}))
    out = tmp_path / "scan.csv"
    assert run_cli("scan", "--manifest", str(mpath), "--out", str(out)) == 0
    assert out.read_text().strip() == ",".join(SCAN_COLUMNS)


def test_scan_failing_cell_recorded(tmp_path):
    manifest = {
        "geometries": [{"label": "missing", "fcidump": str(tmp_path / "no.fcidump")},
                       {"label": "h2", "fcidump": H2}],
        "methods": [{"method": "compact", "compact": [5, 5, 4]}],
    }
    mpath = tmp_path / "manifest.json"
    mpath.write_text(json.dumps(manifest))
    out = tmp_path / "scan.csv"
    assert run_cli("scan", "--manifest", str(mpath), "--out", str(out)) == 0
    rows = list(csv.DictReader(out.open()))
    assert rows[0]["status"].startswith("error:")
    assert rows[1]["status"] == "ok"


def test_input_error_exit_code(tmp_path):
    bad = tmp_path / "junk.fcidump"
    bad.write_text("not a dump\n")
    assert run_cli("fci", "--fcidump", str(bad)) == 1
    assert run_cli("fci", "--fcidump", str(tmp_path / "absent")) == 1


def test_nonconvergence_exit_code(tmp_path):
    out = tmp_path / "r.json"
    code = run_cli("run", "--fcidump", str(fixture_path("lih_1.600")),
                   "--method", "compact", "--compact", "5,5,4",
                   "--max-evals", "3", "--out", str(out))
    assert code == 2
    record = json.loads(out.read_text())
    assert record["converged"] is False
    assert record["n_function_evals"] <= 5
