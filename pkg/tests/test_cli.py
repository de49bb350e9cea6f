import json
import subprocess
import sys

import pytest

from awconn.cli import main
from awconn.verify import GenericityExhausted, Sampler, report_json, run_verify

WORKED = ["--a", "2", "--b", "3", "--c", "5", "--d", "7", "--q", "1/2"]


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_epoly_examples(capsys):
    code, out, _ = run(capsys, "epoly", *WORKED, "--r", "-1")
    assert code == 0
    assert out.strip() == '{"-1":"1/1","0":"-67/209"}'
    code, out, _ = run(capsys, "epoly", *WORKED, "--r", "0")
    assert out.strip() == '{"0":"1/1"}'


def test_ppoly_examples(capsys):
    code, out, _ = run(capsys, "ppoly", *WORKED, "--n", "0")
    assert code == 0 and out.strip() == '{"0":"1/1"}'
    code, out, _ = run(capsys, "ppoly", *WORKED, "--n", "1")
    assert json.loads(out) == {"-1": "1/1", "0": "-230/209", "1": "1/1"}


def test_connect_identity(capsys):
    code, out, _ = run(capsys, "connect", "--shift", "a", "--e", "2", "--N", "3")
    assert code == 0
    entries = json.loads(out)
    for key, value in entries.items():
        r, s = key.split(",")
        assert value == ("1/1" if r == s else "0/1")


@pytest.mark.parametrize("shift", ["a", "c"])
def test_connect_oracle(capsys, shift):
    code, out, _ = run(capsys, "connect", "--shift", shift, "--oracle")
    assert code == 0
    payload = json.loads(out)
    assert payload["summary"] == "0 mismatches"
    assert payload["closed"] == payload["oracle"]


def test_connect_csv(capsys, tmp_path):
    path = tmp_path / "t.csv"
    code, out, err = run(capsys, "connect", "--shift", "c", "--N", "2", "--oracle", "--format", "csv", "--out", str(path))
    assert code == 0 and out == ""
    assert err.strip() == "0 mismatches"
    lines = path.read_text().splitlines()
    assert lines[0] == "E0,E1,E2,E-1,E-2"
    assert len(lines) == 6


@pytest.mark.parametrize(
    "argv",
    [
        ["epoly", "--a", "x", "--r", "1"],
        ["epoly", "--a", "1/0", "--r", "1"],
        ["epoly", "--a", "0.5", "--r", "1"],
        ["epoly"],
        ["connect", "--shift", "a", "--N", "13"],
        ["connect", "--shift", "b"],
        ["verify", "nosuch"],
        ["verify", "all", "--M", "0"],
    ],
)
def test_parse_errors_exit_2(argv, capsys):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2
    assert "error" in capsys.readouterr().err


@pytest.mark.parametrize(
    "argv, factor",
    [
        (["epoly", "--a", "2", "--b", "1/2", "--r", "1"], "ab"),
        (["epoly", "--q", "1", "--r", "1"], "q"),
        (["epoly", "--a", "0", "--r", "1"], "nonzero"),
        (["connect", "--shift", "a", "--e", "1/105", "--N", "2"], "target abcd"),
    ],
)
def test_nongeneric_exit_3(argv, factor, capsys):
    code, _, err = run(capsys, *argv)
    assert code == 3
    assert factor in err


def test_exhaustion_exit_4(capsys, monkeypatch):
    def never(self, *args, **kwargs):
        raise GenericityExhausted("no generic tuple after 1000 resamples")

    monkeypatch.setattr(Sampler, "params", never)
    code, _, err = run(capsys, "verify", "eigen", "--N", "2", "--M", "1")
    assert code == 4
    assert "1000" in err


def test_sampler_gives_up_after_budget():
    s = Sampler(0)
    with pytest.raises(GenericityExhausted):
        s.params(1, extra=lambda p: "always rejected")


def test_verify_report_shape(capsys):
    code, out, _ = run(capsys, "verify", "appendixB", "--N", "3", "--M", "2", "--seed", "7")
    assert code == 0
    report = json.loads(out)
    assert set(report) == {"seed", "tuples", "checks", "pass"}
    assert report["seed"] == 7 and report["pass"] is True
    assert len(report["tuples"]) == 2
    ids = {t["id"] for t in report["tuples"]}
    for check in report["checks"]:
        assert set(check) == {"name", "params", "status", "detail"}
        assert check["params"]["tuple"] in ids


def test_verify_determinism():
    a = report_json(run_verify("classical", 4, 2, 99))
    b = report_json(run_verify("classical", 4, 2, 99))
    assert a == b
    assert a != report_json(run_verify("classical", 4, 2, 100))


def test_allow_negative_samples_negatives():
    report = run_verify("classical", 2, 4, 3, allow_negative=True)
    values = [v for t in report["tuples"] for k, v in t.items() if k not in ("id", "kind")]
    assert any(v.startswith("-") for v in values)
    plain = run_verify("classical", 2, 4, 3)
    assert not any(v.startswith("-") for t in plain["tuples"] for k, v in t.items() if k not in ("id", "kind"))


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "awconn", "epoly", "--r", "-1"], capture_output=True, text=True, check=False
    )
    assert proc.returncode == 0
    assert proc.stdout.strip() == '{"-1":"1/1","0":"-67/209"}'


@pytest.mark.parametrize(
    "argv",
    [
        ["verify", "all", "--N", "5", "--M", "3", "--seed", "42"],
        ["verify", "cocycle", "--N", "6"],
        ["verify", "classical", "--N", "10"],
    ],
)
def test_documented_verify_runs(argv, tmp_path):
    out = tmp_path / "report.json"
    assert main(argv + ["--out", str(out)]) == 0
    assert json.loads(out.read_text())["pass"] is True
