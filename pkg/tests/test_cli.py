import json

import pytest

from geodense.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    return code, json.loads(out)


def test_derive_order_four(capsys, isolated_cache):
    code, doc = run_json(capsys, "derive", "--order", "4")
    assert code == 0
    assert doc == {"order": 4, "constants": [
        {"monomial": "Tr[0,0]", "value": "-1/180"},
        {"monomial": "Tr[0]^2", "value": "1/72"},
        {"monomial": "Tr[2]", "value": "-1/40"},
    ]}
    assert (isolated_cache / "order_4.json").exists()


def test_derive_is_byte_identical_and_cache_reproducible(capsys, isolated_cache):
    _, first, _ = run(capsys, "derive", "--order", "6")
    stored = (isolated_cache / "order_6.json").read_bytes()
    _, second, _ = run(capsys, "derive", "--order", "6")
    assert first == second
    (isolated_cache / "order_6.json").unlink()
    _, third, _ = run(capsys, "derive", "--order", "6")
    assert third == first
    assert (isolated_cache / "order_6.json").read_bytes() == stored
    assert stored.decode() == first


def test_cache_flag_overrides_env(capsys, tmp_path, isolated_cache):
    target = tmp_path / "elsewhere"
    run(capsys, "derive", "--order", "3", "--cache", str(target))
    assert (target / "order_3.json").exists()
    assert not (isolated_cache / "order_3.json").exists()


def test_corrupt_cache_is_rederived(capsys, isolated_cache):
    isolated_cache.mkdir()
    (isolated_cache / "order_2.json").write_text("{not json")
    code, doc = run_json(capsys, "derive", "--order", "2")
    assert code == 0 and doc["constants"][0]["value"] == "-1/6"


@pytest.mark.parametrize("argv", [["derive", "--order", "9"], ["derive", "--order", "1"],
                                  ["vanhecke", "--order", "4"],
                                  ["expand", "--eps", "x", "--m", "4", "--k", "1", "--order", "4"],
                                  ["expand", "--eps", "+", "--m", "4", "--k", "4", "--order", "4"],
                                  ["bounds", "--m", "5", "--k", "7"],
                                  ["bounds", "--m", "2", "--k", "0"],
                                  ["derive", "--order", "2", "--tol", "0"]])
def test_usage_errors_exit_two(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2 and out == "" and err.startswith("geodense:")


def test_argparse_errors_exit_two(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["derive"])
    assert exc.value.code == 2


@pytest.mark.parametrize("order", range(2, 9))
def test_verify_harmonic(capsys, order):
    code, doc = run_json(capsys, "verify-harmonic", "--order", str(order))
    assert code == 0 and doc["match"] and doc["diff"] == {}
    if order % 2:
        assert doc["reduced"] == {}


def test_verify_harmonic_order_six_value(capsys):
    _, doc = run_json(capsys, "verify-harmonic", "--order", "6")
    assert doc["reduced"]["Tr[1,1]"] == "1/10080"


def test_verify_harmonic_detects_tampered_cache(capsys, isolated_cache):
    isolated_cache.mkdir()
    (isolated_cache / "order_2.json").write_text(json.dumps(
        {"order": 2, "constants": [{"monomial": "Tr[0]", "value": "-1/5"}]}))
    code, doc = run_json(capsys, "verify-harmonic", "--order", "2")
    assert code == 1 and not doc["match"]


@pytest.mark.parametrize("order", [3, 5, 7])
def test_vanhecke(capsys, order):
    code, doc = run_json(capsys, "vanhecke", "--order", str(order))
    assert code == 0 and doc["match"] and doc["lhs"] == doc["rhs"]


def test_expand(capsys):
    code, doc = run_json(capsys, "expand", "--eps", "+", "--m", "4", "--k", "1", "--order", "4")
    assert code == 0
    assert doc["coefficients"] == ["1/1", "0/1", "-1/1", "0/1", "2/5"]
    code, out, _ = run(capsys, "expand", "--eps", "+", "--m", "4", "--k", "1", "--order", "4",
                       "--emit", "text")
    assert out.strip() == "[1, 0, -1, 0, 2/5]"


def test_bounds(capsys):
    code, doc = run_json(capsys, "bounds", "--m", "8", "--k", "3")
    assert code == 0
    iv = doc["interval"]
    assert iv["center"] == "16/7" and iv["half_width_squared"] == "648/49"
    assert float(iv["lower"]) == pytest.approx(-1.35084, abs=1e-4)
    assert float(iv["upper"]) == pytest.approx(5.92227, abs=1e-4)
    assert doc["sum_eps_lambda"] == 16 and doc["sum_lambda_sq"] == 52


def _profile(tmp_path, **doc) -> str:
    path = tmp_path / "profile.json"
    path.write_text(json.dumps(doc))
    return str(path)


def test_check_profile(capsys, tmp_path):
    path = _profile(tmp_path, eps="+", m=4, k=1, lambdas=[4, 1, 1])
    code, doc = run_json(capsys, "check-profile", "--input", path)
    assert code == 0 and doc["rigid"]
    path = _profile(tmp_path, eps="+", m=4, k=1, lambdas=["3", "0", "3"])
    code, doc = run_json(capsys, "check-profile", "--input", path)
    assert code == 0 and not doc["rigid"] and doc["lambdas"] == ["3/1", "3/1", "0/1"]


def test_check_profile_float_input_and_tolerance(capsys, tmp_path):
    path = _profile(tmp_path, eps="-", m=4, k=1, lambdas=[-3.0000000001, -2.9999999999, 0.0])
    code, doc = run_json(capsys, "check-profile", "--input", path, "--tol", "1e-6")
    assert code == 0 and doc["lambdas"] == ["-3/1", "-3/1", "0/1"]
    code, _, err = run(capsys, "check-profile", "--input", path, "--tol", "1e-12")
    assert code == 1 and "sum" in err


def test_check_profile_bad_inputs(capsys, tmp_path):
    path = _profile(tmp_path, eps="+", m=4, k=1, lambdas=[2, 2, 2])
    assert run(capsys, "check-profile", "--input", path)[0] == 1
    assert run(capsys, "check-profile", "--input", str(tmp_path / "missing.json"))[0] == 2
    path = _profile(tmp_path, eps="+", m=4, lambdas=[4, 1, 1])
    assert run(capsys, "check-profile", "--input", path)[0] == 2


def test_catalog(capsys):
    code, doc = run_json(capsys, "catalog")
    assert code == 0
    assert [r["name"] for r in doc["symmetric"]][:4] == ["S^n", "CP^n", "HP^n", "OP^2"]
    assert len(doc["damek_ricci"]) == 8
    code, out, _ = run(capsys, "catalog", "--emit", "text")
    assert "OP^2" in out


def test_latex_emit(capsys):
    _, out, _ = run(capsys, "derive", "--order", "2", "--emit", "latex")
    assert out == "\\mathcal{H}_{2} = -\\frac{\\operatorname{Tr}\\{\\mathcal{J}\\}}{6}\n"
    _, out, _ = run(capsys, "bounds", "--m", "8", "--k", "3", "--emit", "latex")
    assert out.startswith("eps*lambda in")


def test_module_entry_point():
    import subprocess
    import sys

    proc = subprocess.run([sys.executable, "-m", "geodense", "expand", "--eps", "-", "--m", "3",
                           "--k", "0", "--order", "2", "--emit", "text"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert proc.stdout.strip() == "[1, 0, 1/3]"
