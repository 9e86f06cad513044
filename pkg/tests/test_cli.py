import json
import subprocess
import sys

import jsonschema
import pytest

from plateau import analysis, cli
from plateau.errors import CertificateFailure

from conftest import FIGURE_ANF, PAPER_ANF


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def analyze_json(capsys, *argv):
    code, out, _ = run(capsys, "analyze", *argv)
    assert code == 0
    return json.loads(out)


# --- analyze ------------------------------------------------------------------

def test_analyze_majority(capsys):
    doc = analyze_json(capsys, "--anf", PAPER_ANF, "--n", "3")
    assert doc["plateau"]["s"] == 1
    assert doc["transforms"]["walsh_hadamard"] == [0, 4, 4, 0, 4, 0, 0, -4]
    walk = [c["params"] for c in doc["characterization"]["certificates"] if c["type"] == "walkreg"]
    assert walk[0] == {"ell": 3, "sigma": 10, "mu": 6, "nu": 6}
    assert [p["ell"] for p in walk] == [3, 5, 7]
    analysis.validate_report(doc)


def test_analyze_zero_is_degenerate(capsys):
    doc = analyze_json(capsys, "--tt", "00000000")
    assert doc["degenerate"] is True
    assert doc["characterization"]["path"] == "degenerate"
    analysis.validate_report(doc)


def test_analyze_figure_function(capsys):
    doc = analyze_json(capsys, "--anf", FIGURE_ANF, "--n", "5")
    assert doc["plateau"]["semibent"] is True
    assert doc["input"]["degree"] == 3
    analysis.validate_report(doc)


@pytest.mark.parametrize("argv", [
    ("--tt", "0110"),
    ("--hex", "17"),
    ("--anf", "x1*x2*x3", "--n", "3"),
    ("--anf", "x1*x2", "--n", "3"),
    ("--anf", "x1*x2 + x3*x4", "--n", "4"),
    ("--tt", "0100000000000000"),
])
def test_reports_validate_against_schema(capsys, argv):
    analysis.validate_report(analyze_json(capsys, *argv))


def test_schema_rejects_tampered_report(capsys):
    doc = analyze_json(capsys, "--tt", "0110")
    doc["unexpected"] = 1
    with pytest.raises(jsonschema.ValidationError):
        analysis.validate_report(doc)
    del doc["unexpected"]
    doc["plateau"]["s"] = "one"
    with pytest.raises(jsonschema.ValidationError):
        analysis.validate_report(doc)


def test_analyze_text_and_csv(capsys):
    code, out, _ = run(capsys, "analyze", "--hex", "17", "--format", "text")
    assert code == 0 and "walkreg: ell=3 sigma=10 mu=6 nu=6" in out
    code, out, _ = run(capsys, "analyze", "--hex", "17", "--format", "csv")
    assert out.splitlines()[:2] == ["w_index,walsh_hadamard,fourier", "0,0,4"]


def test_analyze_from_file(capsys, tmp_path):
    path = tmp_path / "one.tt"
    path.write_text(f"# majority\nanf:3:{PAPER_ANF}\n")
    doc = analyze_json(capsys, "--input", str(path))
    assert doc["input"]["truth_table"] == "00010111"


def test_analyze_is_deterministic(capsys):
    a = run(capsys, "analyze", "--anf", FIGURE_ANF, "--n", "5", "--seed", "4")
    b = run(capsys, "analyze", "--anf", FIGURE_ANF, "--n", "5", "--seed", "4")
    assert a == b


# --- exit codes -----------------------------------------------------------------

@pytest.mark.parametrize("argv", [
    ("analyze", "--anf", "x1 x2", "--n", "2"),
    ("analyze", "--anf", "x1 + x5", "--n", "2"),
    ("analyze", "--anf", "x1"),
    ("analyze", "--tt", "011"),
    ("analyze", "--tt", "0110", "--hex", "6"),
    ("analyze", "--tt", "0110", "--n", "3"),
    ("analyze", "--tt", "0110", "--ell-max", "4"),
    ("analyze", "--tt", "0110", "--dense-limit", "13"),
    ("enumerate", "--n", "5", "--exhaustive"),
    ("enumerate", "--n", "9", "--sample", "3"),
    ("enumerate", "--n", "3"),
])
def test_bad_input_exits_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert err.startswith("plateau: ")


def test_looped_function_exits_3(capsys):
    code, _, err = run(capsys, "analyze", "--tt", "1000")
    assert code == 3 and "LoopedGraph" in err


def test_dense_limit_violation_exits_3(capsys):
    code, _, err = run(capsys, "export", "adjacency", "--tt", "01" * 256, "--dense-limit", "8")
    assert code == 3 and "TooLargeForDense" in err


def test_certificate_failure_exits_4(capsys, monkeypatch):
    def broken(*args, **kwargs):
        raise CertificateFailure("forced")

    monkeypatch.setattr(analysis, "full_characterization", broken)
    code, _, err = run(capsys, "analyze", "--tt", "0110")
    assert code == 4 and "forced" in err
    code, out, err = run(capsys, "verify", "--tt", "0110")
    assert code == 4 and "FAILED 0110" in err
    assert json.loads(out)["ok"] is False


def test_io_error_exits_5(capsys, tmp_path):
    code, _, err = run(capsys, "analyze", "--input", str(tmp_path / "missing.tt"))
    assert code == 5
    code, _, _ = run(capsys, "export", "dot", "--tt", "0110", "--out", str(tmp_path / "no" / "g.dot"))
    assert code == 5


# --- enumerate / verify -----------------------------------------------------------

def test_enumerate_n3(capsys):
    code, out, _ = run(capsys, "enumerate", "--n", "3", "--exhaustive")
    doc = json.loads(out)
    assert code == 0 and doc["ok"]
    assert doc["scanned"] == 256
    assert doc["looped_skipped"] == 128
    assert doc["certified"]["semibent_table"] > 0
    assert doc["failures"] == []


def test_enumerate_sample_deterministic_and_parallel(capsys):
    argv = ("enumerate", "--n", "5", "--sample", "60", "--seed", "7", "--ell-max", "3")
    a = run(capsys, *argv)
    b = run(capsys, *argv)
    c = run(capsys, *argv, "--jobs", "2")
    assert a == b == c
    doc = json.loads(a[1])
    assert doc["seed"] == 7 and doc["scanned"] == 60


def test_enumerate_seed_changes_sample(capsys):
    a = run(capsys, "enumerate", "--n", "4", "--sample", "30", "--seed", "1", "--ell-max", "3")
    b = run(capsys, "enumerate", "--n", "4", "--sample", "30", "--seed", "2", "--ell-max", "3")
    assert a[1] != b[1]


def test_enumerate_text(capsys):
    code, out, _ = run(capsys, "enumerate", "--n", "2", "--exhaustive", "--format", "text")
    assert code == 0 and out.startswith("exhaustive n=2: 16 functions scanned")


def test_verify_file(capsys, tmp_path):
    path = tmp_path / "batch.tt"
    path.write_text(f"tt:00010111\nhex:0f\nanf:5:{FIGURE_ANF}\n# looped\ntt:1000\n")
    code, out, _ = run(capsys, "verify", "--input", str(path))
    doc = json.loads(out)
    assert code == 0 and doc["scanned"] == 4 and doc["looped_skipped"] == 1


# --- export ---------------------------------------------------------------------

def test_export_dot_figure(capsys, tmp_path):
    target = tmp_path / "fig.dot"
    code, out, _ = run(capsys, "export", "dot", "--anf", FIGURE_ANF, "--n", "5", "--out", str(target))
    assert code == 0 and out == ""
    text = target.read_text()
    assert text.startswith("graph G_f {")
    assert sum(1 for line in text.splitlines() if line.endswith('";') and "--" not in line) == 32
    assert sum(1 for line in text.splitlines() if "--" in line) == 192


def test_export_adjacency(capsys):
    code, out, _ = run(capsys, "export", "adjacency", "--anf", PAPER_ANF, "--n", "3")
    rows = [list(map(int, r.split(","))) for r in out.splitlines()]
    assert code == 0 and len(rows) == 8 and all(len(r) == 8 and sum(r) == 4 for r in rows)


def test_export_spectrum_zero(capsys):
    code, out, _ = run(capsys, "export", "spectrum", "--tt", "00000000")
    assert code == 0
    assert json.loads(out) == {"n": 3, "kind": "fourier", "values": [0] * 8}


def test_export_wht_csv(capsys):
    code, out, _ = run(capsys, "export", "wht", "--tt", "00010111", "--format", "csv")
    assert out.splitlines()[-1] == "7,-4"


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "plateau", "analyze", "--tt", "0110", "--format", "text"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout.startswith("n=2 tt=0110")


def test_env_dense_limit(capsys, monkeypatch):
    monkeypatch.setenv("PLATEAU_DENSE_LIMIT", "2")
    code, _, err = run(capsys, "export", "adjacency", "--tt", "00010111")
    assert code == 3
