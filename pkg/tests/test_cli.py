import json
import subprocess
import sys
from fractions import Fraction

import pytest

from cartan_hartogs.cli import run
from cartan_hartogs.kernel import EpsilonExpansion


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_invariants(capsys):
    code, out, _ = call(capsys, "invariants", "--type", "I", "--m", "2", "--n", "3")
    assert code == 0
    data = json.loads(out)
    assert {k: data[k] for k in "rabdp"} == {"r": 2, "a": 2, "b": 1, "d": 6, "p": 5}


@pytest.mark.parametrize(
    "argv",
    [
        ["invariants", "--type", "IV", "--n", "4"],
        ["invariants", "--type", "I", "--m", "2"],
        ["invariants", "--type", "II", "--n", "5", "--m", "1"],
        ["invariants", "--type", "XI", "--n", "5"],
        ["invariants", "--type", "V16", "--n", "5"],
        ["epsilon", "--type", "I", "--m", "1", "--n", "1", "--alpha", "1/0", "--X", "1"],
        ["epsilon", "--type", "I", "--m", "1", "--n", "1", "--alpha", "5", "--X", "3/2"],
        ["epsilon", "--type", "I", "--m", "1", "--n", "1", "--alpha", "5", "--point", "[1, 2]"],
        ["epsilon", "--type", "I", "--m", "1", "--n", "1", "--alpha", "5", "--point", '{"z": ["1/2"], "w": ["1"]}'],
        ["epsilon", "--type", "I", "--m", "1", "--n", "1", "--alpha", "5", "--point", '{"z": ["1/2", "0"], "w": ["0"]}'],
        ["epsilon", "--type", "I", "--m", "1", "--n", "1", "--mu", "-1", "--alpha", "5", "--X", "1"],
        ["coeffs", "--type", "I", "--m", "1", "--n", "1", "--d0", "0"],
        ["classify", "--sweep-max-dim", "5", "--type", "I"],
        ["classify"],
        ["verify", "--suite", "bogus"],
        ["verify", "--seed", "-3"],
        ["frobnicate"],
        ["invariants", "--type", "I", "--m", "1", "--n", "1", "--unknown"],
    ],
)
def test_usage_errors(capsys, argv):
    code, out, err = call(capsys, *argv)
    assert code == 2
    assert out == ""
    lines = err.strip().splitlines()
    assert len(lines) == 1 and lines[0].startswith("cartan-hartogs: error:")


def test_epsilon_point(capsys):
    code, out, _ = call(capsys, "epsilon", "--type", "I", "--m", "1", "--n", "1", "--mu", "1", "--alpha", "5", "--point", '{"z": ["1/2"], "w": ["1/4"]}', "--json")
    assert code == 0
    data = json.loads(out)
    assert data["epsilon"] == "12/1" and data["X"] == "11/12" and data["admissible"]


def test_epsilon_default_mu_reported(capsys):
    code, out, _ = call(capsys, "epsilon", "--type", "I", "--m", "2", "--n", "2", "--alpha", "9", "--X", "1/2", "--json")
    data = json.loads(out)
    assert code == 0 and data["mu"] == "4/5" and data["mu_default"] is True


@pytest.mark.parametrize(
    "argv",
    [
        ["--type", "IV", "--n", "5", "--alpha", "17/2", "--X", "2/7"],
        ["--type", "III", "--n", "3", "--mu", "1/3", "--d0", "2", "--alpha", "40", "--X", "0.125"],
        ["--type", "II", "--n", "5", "--alpha", "3", "--X", "1"],
    ],
)
def test_epsilon_round_trip(capsys, argv):
    code, out, _ = call(capsys, "epsilon", *argv, "--json")
    assert code == 0
    data = json.loads(out)
    exp = EpsilonExpansion.from_json(data["expansion"])
    assert exp(Fraction(data["alpha"]), Fraction(data["X"])) == Fraction(data["epsilon"])


def test_inadmissible_warns(capsys):
    code, out, err = call(capsys, "epsilon", "--type", "I", "--m", "1", "--n", "1", "--mu", "1", "--alpha", "2", "--X", "1/2", "--json")
    assert code == 0 and "warning" in err
    assert json.loads(out)["admissible"] is False


def test_coeffs(capsys):
    code, out, _ = call(capsys, "coeffs", "--type", "I", "--m", "2", "--n", "2", "--mu", "1")
    assert code == 0 and "2*X - 15" in out and "6*X^2 - 28*X + 85" in out
    code, out, _ = call(capsys, "coeffs", "--type", "I", "--m", "1", "--n", "3", "--mu", "1", "--d0", "2", "--json")
    data = json.loads(out)
    assert data["a1_constant"] and data["a2_constant"]


def test_hua(capsys):
    code, out, _ = call(capsys, "hua", "--type", "III", "--n", "2", "--json")
    data = json.loads(out)
    assert code == 0 and data["hua_at_0"] == "3/1" and data["c_omega"] == "2/1" and data["volume_over_pi_d"] == "1/6"
    code, out, _ = call(capsys, "hua", "--type", "VI27")
    assert code == 0 and "VI27" in out


def test_classify_single(capsys):
    code, out, _ = call(capsys, "classify", "--type", "IV", "--n", "5", "--json")
    data = json.loads(out)
    assert code == 0 and data["residual"] == "140/1" and data["mu_star"] == "5/6" and not data["a2_constant"]


def test_classify_sweep(capsys):
    code, out, _ = call(capsys, "classify", "--sweep-max-dim", "50", "--json")
    assert code == 0
    verdicts = [json.loads(line) for line in out.splitlines()]
    for v in verdicts:
        ball = v["spec"]["kind"] == "I" and v["spec"]["params"][0] == 1
        assert v["a2_constant"] == ball
        if ball:
            assert v["mu"] == "1/1"


def test_classify_table(capsys):
    code, out, _ = call(capsys, "classify", "--sweep-max-dim", "6")
    assert code == 0 and out.splitlines()[0].split()[0] == "domain"


def test_byte_identical(capsys):
    argv = ["classify", "--sweep-max-dim", "20", "--json"]
    _, a, _ = call(capsys, *argv)
    _, b, _ = call(capsys, *argv, "--workers", "4")
    assert a == b


def test_verify_suite(capsys):
    code, out, _ = call(capsys, "verify", "--suite", "operator", "--seed", "42", "--json")
    reports = json.loads(out)
    assert code == 0 and reports and all(r["passed"] for r in reports)


def test_verify_failure_exit(capsys, monkeypatch):
    from cartan_hartogs import cli
    from cartan_hartogs.verify import CheckReport

    monkeypatch.setattr(cli, "run_suite", lambda *a, **k: [CheckReport.compare("x", 1.0, 2.0, 1e-3)])
    code, out, _ = call(capsys, "verify")
    assert code == 1 and "FAIL" in out


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "cartan_hartogs", "invariants", "--type", "V16"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["d"] == 16


@pytest.mark.slow
def test_verify_all_seed_42():
    proc = subprocess.run([sys.executable, "-m", "cartan_hartogs", "verify", "--suite", "all", "--seed", "42"], capture_output=True, text=True)
    assert proc.returncode == 0, proc.stdout[-2000:]
