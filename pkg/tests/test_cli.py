import csv
import json
import subprocess
import sys

from zpinv import NoetherReport
from zpinv.cli import main, run_entry, run_suite
from zpinv.expected import CatalogEntry


def strip_volatile(obj):
    """Drop timing/environment payloads before byte comparisons."""
    if isinstance(obj, dict):
        return {
            k: strip_volatile(v)
            for k, v in obj.items()
            if k not in ("timings", "environment")
        }
    if isinstance(obj, list):
        return [strip_volatile(v) for v in obj]
    return obj


def test_beta_command(capsys, tmp_path):
    json_path = tmp_path / "beta.json"
    csv_path = tmp_path / "beta.csv"
    code = main([
        "beta", "--p", "3", "--module", "V2",
        "--json", str(json_path), "--csv", str(csv_path),
    ])
    out = capsys.readouterr().out
    assert code == 0
    assert "beta = 3" in out
    payload = json.loads(json_path.read_text())
    assert payload["beta"] == 3
    assert payload["bound"] == 3
    assert [row["degree"] for row in payload["table"]] == [1, 2, 3]
    report = NoetherReport.from_dict(payload)
    assert report.to_dict() == payload  # emit -> parse -> emit round trip
    with open(csv_path) as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["degree", "dim_poly", "dim_inv", "dim_dec", "dim_indec"]
    assert len(rows) == 4


def test_beta_trivial_module_note(capsys):
    code = main(["beta", "--p", "3", "--module", "3V1"])
    out = capsys.readouterr().out
    assert code == 0
    assert "beta = 1" in out
    assert "trivial" in out


def test_beta_block_too_large(capsys):
    code = main(["beta", "--p", "3", "--module", "V4"])
    err = capsys.readouterr().err
    assert code == 2
    assert "order" in err


def test_beta_bad_syntax(capsys):
    assert main(["beta", "--p", "3", "--module", "Q2"]) == 2


def test_beta_size_budget(capsys):
    assert main(["beta", "--p", "3", "--module", "V2+V3", "--column-cap", "2"]) == 3


def test_invariants_command(capsys, tmp_path):
    emit = tmp_path / "basis.json"
    code = main([
        "invariants", "--p", "3", "--module", "V2", "--degree", "3",
        "--emit", str(emit),
    ])
    out = capsys.readouterr().out
    assert code == 0
    assert "dimension 2" in out
    payload = json.loads(emit.read_text())
    assert payload["dimension"] == 2
    assert len(payload["basis"]) == 2


def test_invariants_multidegree(capsys):
    code = main([
        "invariants", "--p", "3", "--module", "V2+V3", "--multidegree", "1,1",
    ])
    out = capsys.readouterr().out
    assert code == 0
    assert "multidegree (1, 1)" in out


def test_coinvariants_command(capsys):
    code = main(["coinvariants", "--p", "3", "--module", "V2"])
    out = capsys.readouterr().out
    assert code == 0
    assert "[1, 1, 1]" in out
    assert "top degree 2" in out


def test_certify_command(capsys):
    code = main(["certify", "--p", "3", "--module", "V2"])
    out = capsys.readouterr().out
    assert code == 0
    assert "certificate ok: True" in out


def test_verify_small(capsys, tmp_path):
    out_path = tmp_path / "suite.json"
    code = main(["verify", "--max-p", "2", "--out", str(out_path)])
    out = capsys.readouterr().out
    assert code == 0
    assert "overall: PASS" in out
    payload = json.loads(out_path.read_text())
    assert payload["overall_pass"]
    assert len(payload["entries"]) == 4
    assert all(e["status"] == "ok" for e in payload["entries"])
    for e in payload["entries"]:
        assert e["beta"] == e["expected"]["value"]
        assert e["coinvariants"]["top_degree"] <= e["coinvariants"]["bound"]
        assert e["certificates"]["leadterm"]["ok"]


def test_verify_deterministic_output():
    a = run_suite(max_p=2).to_dict()
    b = run_suite(max_p=2).to_dict()
    assert json.dumps(strip_volatile(a), sort_keys=True) == json.dumps(
        strip_volatile(b), sort_keys=True
    )


def test_suite_report_round_trip(tmp_path):
    from zpinv.cli import SuiteReport

    out = tmp_path / "suite.json"
    report = run_suite(max_p=2, out_path=str(out))
    payload = json.loads(out.read_text())
    assert SuiteReport.from_dict(payload).to_dict() == report.to_dict()
    assert json.loads(json.dumps(report.to_dict())) == report.to_dict()


def test_verify_workers_match_serial():
    serial = strip_volatile(run_suite(max_p=3, workers=1).to_dict())
    threaded = strip_volatile(run_suite(max_p=3, workers=4).to_dict())
    assert serial == threaded


def test_verify_invalid_catalog(capsys, tmp_path):
    catalog = tmp_path / "catalog.json"
    catalog.write_text(json.dumps({
        "entries": [
            {"p": 3, "module": "V2"},
            {"p": 3, "module": "V4"},
        ]
    }))
    code = main(["verify", "--catalog", str(catalog)])
    out = capsys.readouterr().out
    assert code == 2
    assert "invalid" in out
    assert "overall: FAIL" in out


def test_verify_empty_catalog(capsys, tmp_path):
    catalog = tmp_path / "catalog.json"
    catalog.write_text(json.dumps({"entries": []}))
    code = main(["verify", "--catalog", str(catalog)])
    out = capsys.readouterr().out
    assert code == 0
    assert "overall: PASS" in out


def test_verify_size_budget_skips(capsys, tmp_path):
    catalog = tmp_path / "catalog.json"
    catalog.write_text(json.dumps({
        "entries": [{"p": 3, "module": "V2+V3"}]
    }))
    out_path = tmp_path / "suite.json"
    code = main([
        "verify", "--catalog", str(catalog), "--column-cap", "2",
        "--out", str(out_path),
    ])
    assert code == 0  # skipped entries are not failures
    payload = json.loads(out_path.read_text())
    assert payload["entries"][0]["status"] == "skipped"
    assert payload["counts"]["skipped"] == 1


def test_run_entry_witness_mode_small():
    # witness route on the cheapest family member
    entry = CatalogEntry(3, "V2+V3", "witness")
    # V2+V3 witness sits at degree 5 = bound, so the witness pins beta
    result = run_entry(entry)
    assert result["status"] == "ok"
    assert result["beta"] == 5
    assert result["certificates"]["witness"]["indecomposable"]


def test_run_entry_witness_mode_rejects_wrong_shape():
    result = run_entry(CatalogEntry(3, "2V2", "witness"))
    assert result["status"] == "invalid"


def test_console_script_version():
    proc = subprocess.run(
        [sys.executable, "-m", "zpinv.cli", "--version"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0


def test_missing_invariants_flags(capsys):
    assert main(["invariants", "--p", "3", "--module", "V2"]) == 2
