import json
import math
import subprocess
import sys
from fractions import Fraction

import pytest

from fischerlab import GradedSeries, Polynomial
from fischerlab.cli import main
from fischerlab.documents import polynomial_to_doc, series_to_doc


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_decompose_expressions(capsys):
    code, out, _ = run(capsys, "decompose", "--f", "z1^4", "--P", "z1^2 + 1", "--dim", "1")
    doc = json.loads(out)
    assert code == 0
    assert doc["q"] == "z1^2 - 1" and doc["r"] == "1"
    assert doc["residual_check"] and doc["reconstruction_check"]


def test_decompose_from_file(capsys, tmp_path, z):
    path = tmp_path / "in.json"
    path.write_text(json.dumps({"dim": 2, "f": polynomial_to_doc(z("z1^2")), "P": "z1^2 + z2^2"}))
    code, out, _ = run(capsys, "decompose", "--input", str(path))
    assert code == 0 and json.loads(out)["r"] == "1/2*z1^2 - 1/2*z2^2"


def test_parse_error_exit_code(capsys):
    code, _, err = run(capsys, "decompose", "--f", "z3", "--P", "z1", "--dim", "2")
    assert code == 2 and "offset" in err


def test_missing_file_exit_code(capsys, tmp_path):
    code, _, _ = run(capsys, "order", "--input", str(tmp_path / "missing.json"))
    assert code == 3


def test_usage_error_exit_code(capsys):
    with pytest.raises(SystemExit) as info:
        main(["ks-scan"])
    assert info.value.code == 2


def test_ks_scan_csv(capsys):
    code, out, _ = run(capsys, "ks-scan", "--P", "z1^2", "--dim", "2", "--m-min", "0", "--m-max", "3",
                       "--format", "csv")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "m,dim,mu,certified" and len(lines) == 5
    assert float(lines[1].split(",")[2]) == pytest.approx(math.sqrt(2))


def test_order_on_exp(capsys, tmp_path):
    slices = tuple(Polynomial(1, {(m,): Fraction(1, math.factorial(m))}) for m in range(41))
    path = tmp_path / "exp.json"
    path.write_text(json.dumps(series_to_doc(GradedSeries(1, slices))))
    code, out, _ = run(capsys, "order", "--input", str(path), "--seed", "3")
    assert code == 0 and json.loads(out)["rho_est"] == pytest.approx(1.0, abs=0.05)


def test_verify(capsys):
    code, out, _ = run(capsys, "verify")
    doc = json.loads(out)
    assert code == 0 and doc["all_passed"]


def test_seed_env_var(monkeypatch):
    from fischerlab import cli
    ns = cli.build_parser().parse_args(["verify"])
    monkeypatch.setenv(cli.SEED_ENV, "17")
    assert cli._seed(ns) == 17
    ns = cli.build_parser().parse_args(["verify", "--seed", "4"])
    assert cli._seed(ns) == 4


def test_lemma_check(capsys, tmp_path):
    path = tmp_path / "lemma.json"
    path.write_text(json.dumps({"sequence": [0.0] * 20, "config": {"E": [1], "sigma": 1.0}, "m_max": 10}))
    code, out, _ = run(capsys, "lemma-check", "--input", str(path))
    doc = json.loads(out)
    assert code == 0 and doc["consistency"]["status"] == "consistent"
    assert doc["probe"]["supports_conclusion"]


def test_lemma_check_alert_exit(capsys, tmp_path):
    seq = [1.0] + [m ** -float(m) for m in range(1, 20)]
    path = tmp_path / "lemma.json"
    path.write_text(json.dumps({"sequence": seq, "config": {"E": [1], "A": 100, "sigma": 1.0}, "m_max": 10}))
    code, out, _ = run(capsys, "lemma-check", "--input", str(path))
    assert code == 1 and json.loads(out)["consistency"]["status"] == "alert"


def test_bound(capsys):
    code, out, _ = run(capsys, "bound", "--k", "2", "--beta1", "0", "--beta2", "0", "--tau", "0")
    doc = json.loads(out)
    assert code == 0 and doc["rho_max"] == "2/1" and doc["branch"] == 1


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "fischerlab", "bound", "--k", "3", "--beta1", "1",
                          "--beta2", "2", "--format", "text"], capture_output=True, text=True)
    assert res.returncode == 0 and "branch: 1" in res.stdout


def test_fault_exit_code(capsys, monkeypatch):
    from fischerlab import cli
    from fischerlab.fischer import FischerFault

    def boom(f, P):
        raise FischerFault("diagonal block T_0 is singular")

    monkeypatch.setattr(cli, "decompose", boom)
    code, _, err = run(capsys, "decompose", "--f", "z1", "--P", "z1", "--dim", "1")
    assert code == 4 and "fault" in err
