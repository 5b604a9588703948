import csv
import io
import json
from pathlib import Path

from ergopt.cli import main
from ergopt.curve import compute_curve
from ergopt.experiments import prevalence_line_experiment
from ergopt.formats import bundled_fixture_paths, dumps, load_document
from ergopt.symbolic import lift_pair

HERE = Path(__file__).parent
FIXTURES = {p.stem: p for p in bundled_fixture_paths()}
GOLDEN = HERE / "golden" / "prevalence_generic4_seed0.json"


def test_beta_worked(capsys):
    assert main(["beta", "--input", str(FIXTURES["worked"])]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[0] == "beta: 2/1 (~2.000000)"
    assert out[1] == "witness cycle: bb"


def test_beta_constant(capsys):
    assert main(["beta", "--input", str(HERE / "data" / "constant.json")]) == 0
    assert capsys.readouterr().out.startswith("beta: 7/3 (~2.333333)")


def test_beta_dag_is_degenerate(capsys):
    assert main(["beta", "--input", str(HERE / "data" / "dag.json")]) == 3
    assert "EmptyRecurrentPart" in capsys.readouterr().err


def test_beta_missing_file(capsys):
    assert main(["beta", "--input", str(HERE / "data" / "missing.json")]) == 2


def test_curve_rows(capsys):
    assert main(["curve", "--input", str(FIXTURES["worked"]), "--interval", "0", "3"]) == 0
    rows = list(csv.DictReader(io.StringIO(capsys.readouterr().out)))
    assert [r["t"] for r in rows] == ["0/1", "1/1", "3/1"]
    assert [r["slope_right"] for r in rows] == ["0/1", "1/1", ""]


def test_curve_is_thin_wrapper(capsys, tmp_path):
    out = tmp_path / "curve.csv"
    assert main(["curve", "--input", str(FIXTURES["two_breakpoints"]), "--interval", "-3", "3",
                 "--output", str(out)]) == 0
    doc = load_document(FIXTURES["two_breakpoints"])
    direct = compute_curve(*lift_pair(doc.system, doc.potential("f"), doc.potential("g")), -3, 3)
    assert out.read_text() == direct.to_csv()


def test_curve_zero_direction(capsys):
    assert main(["curve", "--input", str(FIXTURES["worked"]), "--direction", "zero"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert len(lines) == 3  # header plus the two ends of a single segment


def test_curve_reversed_interval(capsys):
    assert main(["curve", "--input", str(FIXTURES["worked"]), "--interval", "3", "0"]) == 2
    assert main(["curve", "--input", str(FIXTURES["worked"]), "--interval", "x", "1"]) == 2


def test_verify_all_bundled(capsys, tmp_path):
    out = tmp_path / "report.json"
    assert main(["verify", "all", "--samples", "10", "--output", str(out)]) == 0
    assert "overall: PASS" in capsys.readouterr().out
    data = json.loads(out.read_text())
    assert data["passed"] is True
    assert {r["claim"] for r in data["reports"]} == {"1", "2", "3", "4", "diam", "fixture"}


def test_verify_single_claim(capsys):
    assert main(["verify", "--claim", "4", "--input", str(FIXTURES["worked"])]) == 0
    assert main(["verify", "2", "--input", str(FIXTURES["nongeneric"]),
                 "--direction", "h", "--interval", "0", "1"]) == 0


def test_verify_tampered(capsys):
    assert main(["verify", "all", "--samples", "5", "--input", str(HERE / "data" / "tampered.json")]) == 1
    out = capsys.readouterr().out
    assert "FAILED fixture tampered: expected_beta" in out
    assert '"computed": "2/1"' in out and '"expected": "3/1"' in out
    assert "overall: FAIL" in out


def test_verify_unknown_claim(capsys):
    assert main(["verify", "5"]) == 2
    assert main(["verify", "--claim", "bogus"]) == 2


def test_prevalence_golden(capsys, tmp_path):
    out = tmp_path / "prev.json"
    assert main(["prevalence", "--input", str(FIXTURES["generic4"]), "--seed", "0",
                 "--output", str(out)]) == 0
    assert out.read_bytes() == GOLDEN.read_bytes()


def test_prevalence_is_thin_wrapper(capsys, tmp_path):
    out = tmp_path / "prev.json"
    assert main(["prevalence", "--input", str(FIXTURES["worked"]), "--direction", "g",
                 "--samples", "30", "--seed", "4", "--output", str(out)]) == 0
    doc = load_document(FIXTURES["worked"])
    direct = prevalence_line_experiment(doc.system, doc.potential("f"), {"g": doc.potential("g")},
                                        30, 10007, 4, "worked")
    assert out.read_text() == dumps(direct.to_dict())


def test_prevalence_empty(capsys, tmp_path):
    out = tmp_path / "prev.json"
    assert main(["prevalence", "--input", str(FIXTURES["worked"]), "--samples", "0",
                 "--output", str(out)]) == 0
    data = json.loads(out.read_text())
    assert all(line["points"] == [] for line in data["lines"])


def test_prevalence_bad_grid(capsys):
    assert main(["prevalence", "--input", str(FIXTURES["worked"]), "--grid-denominator", "0"]) == 2
    assert main(["prevalence", "--input", str(FIXTURES["worked"]), "--samples", "-1"]) == 2


def test_prevalence_needs_input(capsys):
    assert main(["prevalence"]) == 2
