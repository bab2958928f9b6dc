import json
import subprocess
import sys

import pytest

from sig22.cli import main, parse_matrix, parse_vector, UsageError
from sig22.numeric import mat


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def run_usage(capsys, *argv):
    with pytest.raises(SystemExit) as e:
        main(list(argv))
    return e.value.code, capsys.readouterr().err


def test_catalog_list_text(capsys):
    code, out = run(capsys, "catalog", "list")
    assert code == 0
    lines = out.strip().splitlines()
    assert [l.split()[0] for l in lines] == ["X1", "X2", "N", "Y", "Z", "Zprime"]
    for line in lines:
        fam = line.split()[0]
        assert ("hermitian_J" in line) == (fam in ("N", "Z"))
        assert ("para_J" in line) == (fam in ("N", "Zprime"))
    assert "lambda" in lines[0]


def test_catalog_list_json(capsys):
    code, out = run(capsys, "catalog", "list", "--json")
    rows = json.loads(out)
    assert code == 0 and out.endswith("\n")
    assert {r["family"] for r in rows if r["hermitian_J"]} == {"N", "Z"}
    assert {r["family"] for r in rows if r["para_J"]} == {"N", "Zprime"}
    assert {r["family"] for r in rows if r["fixed_point_solver"]} == {"Z", "Zprime"}
    assert next(r for r in rows if r["family"] == "N")["embeddings"] == ["complex", "real"]


def test_catalog_json_to_file(tmp_path, capsys):
    path = tmp_path / "cat.json"
    assert main(["catalog", "list", "--json", str(path)]) == 0
    assert json.loads(path.read_text(encoding="utf-8"))[0]["family"] == "X1"


def test_verify_n_quick_passes_with_exact_algebra(capsys):
    code, out = run(capsys, "verify", "--space", "N", "--kappa", "1", "--quick", "--json")
    rep = json.loads(out)
    assert code == 0 and rep["status"] == "pass"
    by_name = {c["name"]: c for c in rep["checks"]}
    for name in ("triple.jacobi", "cocycle.d_alpha", "cocycle.d_gamma"):
        assert by_name[name]["max_residual"] == "exact"
    assert rep["space"] == {"family": "N", "params": {"kappa": "1"}, "label": "N(1)"}


def test_verify_x1_o11_quick(capsys):
    code, out = run(capsys, "verify", "--space", "X1", "--eps1", "1", "--eps2", "-1", "--lambda", "1", "--quick")
    assert code == 0
    assert out.startswith("X1(1,-1,1): PASS")
    pull = next(l for l in out.splitlines() if "isometry.pullback" in l)
    assert "O(1,1)" in pull and "O(1,1)·θ" in pull


def test_verify_rational_parameter_rendering(capsys):
    code, out = run(capsys, "verify", "--space", "X2", "--nu", "1/2", "--quick", "--json")
    assert code == 0
    assert json.loads(out)["space"]["params"] == {"nu": "1/2"}


@pytest.mark.parametrize("argv", [
    ["verify", "--space", "X1", "--eps1", "1", "--eps2", "1", "--lambda", "0"],
    ["verify", "--space", "X1", "--lambda", "1"],
    ["verify", "--space", "N", "--kappa", "2"],
    ["verify", "--space", "N", "--kappa", "1", "--nu", "1"],
    ["verify"],
    ["verify", "--grid", "tiny"],
    ["fixed-point", "--space", "Z", "--eps", "1", "--c", "0", "--b", "0,0", "--A", "identity"],
    ["fixed-point", "--space", "Z", "--eps", "1", "--c", "0", "--b", "0,0,x", "--A", "identity"],
    ["metric", "--space", "Z", "--eps", "1", "--c", "0", "--point", "0,0,0,0"],
    ["classify-so12", "--A", "diag:2,1,1"],
])
def test_usage_errors_exit_2(capsys, argv):
    code, _ = run_usage(capsys, *argv)
    assert code == 2


def test_lambda_error_message_names_the_flag(capsys):
    _, err = run_usage(capsys, "verify", "--space", "X1", "--eps1", "1", "--eps2", "1", "--lambda", "0")
    assert "lambda" in err


def test_fixed_point_pure_translation(capsys):
    code, out = run(capsys, "fixed-point", "--space", "Z", "--eps", "1", "--c", "0", "--b", "0,0,1", "--A", "identity")
    assert code == 0
    assert out.splitlines()[0] == "point    (0, 0, 0, 0, 0, 1)"
    assert "residual exact" in out


def test_fixed_point_json(capsys):
    code, out = run(capsys, "fixed-point", "--space", "Z", "--eps", "1", "--c", "0", "--b", "0,0,1",
                    "--A", "identity", "--json")
    d = json.loads(out)
    assert code == 0
    assert d["fixed_point"] == ["0", "0", "0", "0", "0", "1"]
    assert d["action_residual"] == "exact" and d["model_residual"] == "exact"


def test_fixed_point_rotation_float(capsys):
    code, out = run(capsys, "fixed-point", "--space", "Z", "--eps", "1", "--c", "1", "--b", "1,2,3",
                    "--A", "1,0,0;0,0,-1;0,1,0", "--json")
    d = json.loads(out)
    assert code == 0
    res = d["action_residual"]
    assert res == "exact" or res <= 1e-9


def test_metric_n_has_minus_kappa_third(capsys):
    code, out = run(capsys, "metric", "--space", "N", "--kappa", "1", "--point", "0,0,1,0", "--group-metric", "--json")
    d = json.loads(out)
    assert code == 0
    assert "-1/3" in [x for row in d["metric"] for x in row]
    assert d["group_metric_residual"] == "exact"


def test_metric_text(capsys):
    code, out = run(capsys, "metric", "--space", "N", "--kappa", "1", "--point", "0,0,1,0")
    assert code == 0 and "-1/3" in out and len(out.strip().splitlines()) == 5


def test_classify_hyperbolic(capsys):
    code, out = run(capsys, "classify-so12", "--A", "diag:4,1,0.25")
    assert code == 0 and out.strip() == "Hyperbolic"


def test_classify_json_reports_frame_and_fixed_vector(capsys):
    code, out = run(capsys, "classify-so12", "--A", "diag:4,1,0.25", "--json")
    d = json.loads(out)
    assert d == {"class": "Hyperbolic", "frame": "null", "trace": "5.25", "fixed_vector": "spacelike"}


def test_classify_identity(capsys):
    assert run(capsys, "classify-so12", "--A", "identity")[1].strip() == "Identity"


def test_act_n_linear_exact(capsys):
    code, out = run(capsys, "act", "--space", "N", "--kappa", "1", "--point", "1,2,3,4", "--S", "0,1;-1,0",
                    "--g", "1,0,0,1,1", "--json")
    d = json.loads(out)
    assert code == 0 and d["pullback_residual"] == "exact"
    assert len(d["image"]) == 4


def test_act_x1_o11(capsys):
    code, out = run(capsys, "act", "--space", "X1", "--eps1", "1", "--eps2", "-1", "--lambda", "1",
                    "--point", "0.5,0.25,-0.5,0.1", "--o11", "5/4,3/4;3/4,5/4", "--theta", "--json")
    d = json.loads(out)
    assert code == 0
    assert d["pullback_residual"] == "exact" or d["pullback_residual"] <= 1e-10


def test_act_o11_rejected_off_special_parameters(capsys):
    code, _ = run_usage(capsys, "act", "--space", "X1", "--eps1", "1", "--eps2", "1", "--lambda", "1",
                        "--point", "0,0,0,0", "--o11", "5/4,3/4;3/4,5/4")
    assert code == 2


def test_act_z_on_embedded_point(capsys):
    code, out = run(capsys, "act", "--space", "Z", "--eps", "1", "--c", "0", "--point", "0,0,0,1,0,0",
                    "--b", "0,0,1", "--A", "identity", "--json")
    d = json.loads(out)
    assert code == 0
    assert d["image"] == ["0", "1", "0", "1", "0", "0"]


def test_act_z_off_manifold(capsys):
    code, _ = run_usage(capsys, "act", "--space", "Z", "--eps", "1", "--c", "0", "--point", "0,0,0,2,0,0")
    assert code == 2


def test_verify_json_is_byte_identical(tmp_path):
    paths = [tmp_path / "a.json", tmp_path / "b.json"]
    for p in paths:
        assert main(["verify", "--space", "Z", "--eps", "-1", "--c", "1", "--quick", "--seed", "3", "--json", str(p)]) == 0
    a, b = (p.read_bytes() for p in paths)
    assert a == b and a.endswith(b"\n")
    assert json.loads(a)["schema"] == "sig22-report/1"


def test_tolerance_env_override(capsys, monkeypatch):
    monkeypatch.setenv("SIG22_TOL", "1e-30")
    code, out = run(capsys, "verify", "--space", "X2", "--nu", "1", "--quick", "--json")
    rep = json.loads(out)
    assert rep["tolerance"]["abs"] == 1e-30
    assert code == 1 and rep["status"] == "fail"


def test_tol_flag_must_be_positive(capsys):
    assert run_usage(capsys, "verify", "--space", "N", "--kappa", "1", "--tol", "0")[0] == 2


def test_parse_helpers():
    assert list(parse_vector("1/2,-3,0.25")) == [pytest.approx(0.5), -3, pytest.approx(0.25)]
    assert (parse_matrix("1,2;3,4", 2) == mat([[1, 2], [3, 4]])).all()
    with pytest.raises(UsageError):
        parse_matrix("1,2,3", 2)


def test_module_entry_point_exit_codes():
    ok = subprocess.run([sys.executable, "-m", "sig22", "classify-so12", "--A", "identity"], capture_output=True, text=True)
    bad = subprocess.run([sys.executable, "-m", "sig22", "verify", "--space", "X1", "--eps1", "1", "--eps2", "1",
                          "--lambda", "0"], capture_output=True, text=True)
    assert ok.returncode == 0 and ok.stdout.strip() == "Identity"
    assert bad.returncode == 2


def test_classify_rational_input_keeps_exact_trace(capsys):
    d = json.loads(run(capsys, "classify-so12", "--A", "diag:4,1,1/4", "--json")[1])
    assert d["trace"] == "21/4" and d["class"] == "Hyperbolic"
