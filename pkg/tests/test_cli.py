import json

import pytest

from somos.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_gen_json(capsys):
    code, out, _ = run(capsys, "gen", "--alpha", "1", "--beta", "1", "--init", "1,1,1,1", "--from", "-2", "--to", "8")
    assert code == 0
    data = json.loads(out)
    assert [t["value"] for t in data["terms"]] == ["7", "3", "2", "1", "1", "1", "1", "2", "3", "7", "23"]


def test_gen_csv_negative_fraction(capsys):
    code, out, _ = run(capsys, "gen", "--alpha", "-1/2", "--beta", "1", "--init", "1,-2,2,1", "--to", "6", "--format", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].startswith("index") and len(lines) == 7


def test_invariants_and_curve(capsys):
    code, out, _ = run(capsys, "invariants", "--alpha", "1331", "--beta", "119790", "--init", "1,3,121,177023")
    data = json.loads(out)
    assert code == 0 and data["T"] == "869" and data["I"] == "105869071"
    code, out, _ = run(capsys, "curve", "--alpha", "1", "--beta", "1", "--init", "1,1,1,1")
    data = json.loads(out)
    assert data["j"] == {"num": "110592", "den": "37"}
    assert data["Q"] == {"x": "1/4", "y": "1/4*s"}


def test_check_and_family(capsys):
    code, out, _ = run(capsys, "check", "--alpha", "1331", "--beta", "119790", "--init", "1,3,121,177023")
    assert code == 0 and json.loads(out)["reports"][0]["verdict"] == "IntegralBidirectional"
    code, out, _ = run(capsys, "family", "--abcde", "3,7,133,30,11")
    data = json.loads(out)
    assert code == 0 and data["beta_T"] == "104097510" and data["verdict"] == "IntegralBidirectional"


def test_fastterm(capsys):
    code, out, _ = run(capsys, "fastterm", "--alpha", "1", "--beta", "1", "--init", "1,1,1,1", "--n", "13")
    assert code == 0 and "83313" in out


def test_dioph_json_lines(capsys):
    code, out, _ = run(capsys, "dioph", "--alpha", "1", "--beta", "1", "--init", "1,1,1,1", "--count", "3")
    lines = [json.loads(l) for l in out.strip().splitlines()]
    assert code == 0 and len(lines) == 3 and all(l["residual"] == "0" for l in lines)


def test_errors_and_usage(capsys):
    code, _, err = run(capsys, "family", "--abcde", "1,1,1,1,1")
    assert code == 1 and err.startswith("error: ConstraintViolated")
    code, _, err = run(capsys, "gen", "--alpha", "1", "--beta", "-1", "--init", "1,1,1,1", "--to", "12")
    assert code == 1 and "ZeroPivot" in err
    code, _, _ = run(capsys, "gen", "--alpha", "1")
    assert code == 2
    code, _, _ = run(capsys, "nosuch")
    assert code == 2


def test_config_round_trip(capsys, tmp_path):
    code, out, _ = run(capsys, "--print-config", "gen", "--alpha", "2", "--beta", "3", "--init", "1,1,1,1", "--to", "9")
    assert code == 0
    cfg = tmp_path / "c.json"
    cfg.write_text(out)
    code, out2, _ = run(capsys, "--config", str(cfg), "--print-config", "gen")
    assert json.loads(out2) == json.loads(out)
    code, a, _ = run(capsys, "--config", str(cfg), "gen")
    code, b, _ = run(capsys, "gen", "--alpha", "2", "--beta", "3", "--init", "1,1,1,1", "--to", "9")
    assert a == b


def test_out_file(capsys, tmp_path):
    target = tmp_path / "o.json"
    code, out, _ = run(capsys, "growth", "--s8", "--out", str(target))
    assert code == 0 and out == ""
    data = json.loads(target.read_text())
    assert data["first_nonintegral_index"] == "18"


def test_gaps_and_laurent(capsys):
    code, out, _ = run(capsys, "gaps", "--N", "3", "--p", "3", "--from", "1", "--to", "20")
    assert code == 0 and set(json.loads(out)["gaps"]) == {"1", "3"}
    code, out, _ = run(capsys, "laurent", "--check", "strong", "--n-max", "8")
    assert code == 0 and json.loads(out)["ok"] is True
