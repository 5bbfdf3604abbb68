import json

import pytest

from qmf import QSeries, cli
from qmf.cli import EXIT_FAIL, EXIT_OK, EXIT_USAGE, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_expand_text(capsys):
    code, out, _ = run(capsys, "expand", "--form", "DELTA_2A", "--terms", "5")
    assert code == EXIT_OK
    assert out.split("\n")[:4] == ["1: 1", "2: -8", "3: 12", "4: 64"]


def test_expand_json_round_trip(capsys):
    code, out, _ = run(capsys, "expand", "--form", "E2A", "--terms", "4", "--format", "json")
    assert code == EXIT_OK
    data = json.loads(out)
    assert data["schema_version"] == 1 and data["command"] == "expand"
    assert data["coefficients"] == ["1", "-8", "-40", "-32"]
    assert cli.dump_json(data) + "\n" == out


def test_bad_form_is_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["expand", "--form", "E3"])
    assert exc.value.code == EXIT_USAGE


def test_fk(capsys):
    code, out, _ = run(capsys, "fk", "--k", "7", "--terms", "4", "--format", "json")
    data = json.loads(out)
    assert code == EXIT_OK and data["residual_zero"] is True
    assert (data["ord"], data["coefficients"]) == (2, ["-70", "-560"])


def test_fk_bad_k(capsys):
    code, _, err = run(capsys, "fk", "--k", "6", "--terms", "10")
    assert code == EXIT_USAGE and "error" in err


def test_fk_failing_residual_exits_one(capsys, monkeypatch):
    monkeypatch.setattr(cli, "ode_residual", lambda f, k, fam: QSeries([0, 1, 0]))
    code, _, _ = run(capsys, "fk", "--k", "3", "--terms", "10")
    assert code == EXIT_FAIL


def test_verify_small_range(capsys):
    code, out, _ = run(capsys, "verify", "--k-min", "3", "--k-max", "11", "--terms", "30", "--jobs", "1")
    assert code == EXIT_OK
    assert out.strip().endswith("ALL PASS: 19 checks")


def test_verify_parallel_json(capsys):
    code, out, _ = run(capsys, "verify", "--k-min", "3", "--k-max", "7", "--terms", "20", "--jobs", "2",
                       "--format", "json")
    data = json.loads(out)
    assert code == EXIT_OK and data["passed"]
    assert [c["k"] for c in data["checks"]] == sorted(c["k"] for c in data["checks"])
    assert all(isinstance(c["wall_time_us"], int) for c in data["checks"])
    assert cli.dump_json(data) + "\n" == out


def test_verify_failure_exits_one(capsys, monkeypatch):
    from qmf.verify import CheckRecord

    monkeypatch.setattr(cli, "theorem_checks", lambda k, p: [CheckRecord("fake", k, p, False, 3)])
    code, out, _ = run(capsys, "verify", "--k-min", "3", "--k-max", "3", "--terms", "10", "--jobs", "1")
    assert code == EXIT_FAIL and "FAIL fake k=3" in out


@pytest.mark.parametrize("lo, hi", [("4", "7"), ("3", "9"), ("11", "7")])
def test_verify_bad_range(capsys, lo, hi):
    code, _, _ = run(capsys, "verify", "--k-min", lo, "--k-max", hi, "--terms", "10")
    assert code == EXIT_USAGE


def test_terms_floor_for_checks(capsys):
    assert run(capsys, "identities", "--terms", "5")[0] == EXIT_USAGE
    assert run(capsys, "expand", "--form", "C", "--terms", "5")[0] == EXIT_OK
    assert run(capsys, "expand", "--form", "C", "--terms", "0")[0] == EXIT_USAGE


def test_identities(capsys):
    code, out, _ = run(capsys, "identities", "--terms", "40")
    assert code == EXIT_OK and "ALL PASS: 15 checks" in out


def test_env_default_terms(capsys, monkeypatch):
    monkeypatch.setenv("QMF_DEFAULT_TERMS", "6")
    code, out, _ = run(capsys, "expand", "--form", "C", "--format", "json")
    assert code == EXIT_OK and json.loads(out)["prec"] == 6
    monkeypatch.setenv("QMF_DEFAULT_TERMS", "many")
    assert run(capsys, "expand", "--form", "C")[0] == EXIT_USAGE


def test_poly(capsys):
    code, out, _ = run(capsys, "poly", "--family", "P", "--n", "4")
    assert code == EXIT_OK and out.strip() == "x^4 + 201x^2 + 4550"
    code, out, _ = run(capsys, "poly", "--family", "Q", "--n", "3", "--format", "json")
    assert json.loads(out)["coefficients"] == ["66", "0", "1"]
    assert run(capsys, "poly", "--family", "P", "--n", "-1")[0] == EXIT_USAGE


def test_frobenius_obstructed(capsys):
    code, out, _ = run(capsys, "frobenius", "--family", "2A", "--k", "3", "--rho", "0", "--terms", "10",
                       "--format", "json")
    data = json.loads(out)
    assert code == EXIT_OK
    assert data["status"] == "OBSTRUCTED" and data["resonance_events"] == [[1, "12"]]
    assert data["series"] is None


def test_frobenius_rational_k(capsys):
    code, out, _ = run(capsys, "frobenius", "--family", "SL2Z", "--k", "7/2", "--terms", "5")
    assert code == EXIT_OK and "rho = 3/4" in out


def test_frobenius_bad_rho(capsys):
    assert run(capsys, "frobenius", "--family", "2A", "--k", "3", "--rho", "2")[0] == EXIT_USAGE
    assert run(capsys, "frobenius", "--family", "5C", "--k", "3")[0] == EXIT_USAGE


def test_decompose_f3(capsys):
    code, out, _ = run(capsys, "decompose", "--k", "3", "--ring", "QM_GAMMA02", "--terms", "40", "--format", "json")
    data = json.loads(out)
    assert code == EXIT_OK and data["status"] == "UNIQUE"
    assert data["terms"] == {"E2*C": "1/144", "C^2": "-1/144", "D": "4/3"}


def test_decompose_not_in_span_is_ok(capsys):
    code, out, _ = run(capsys, "decompose", "--k", "3", "--ring", "MOD_GAMMA02", "--terms", "40")
    assert code == EXIT_OK and "NOT_IN_SPAN" in out


def test_decompose_catalog_form(capsys):
    code, out, _ = run(capsys, "decompose", "--form", "G", "--ring", "MOD_GAMMA02", "--terms", "30", "--format", "json")
    assert code == EXIT_OK and json.loads(out)["terms"] == {"C^2": "1", "D": "-128"}
    # G changes sign under the Fricke involution, so it is not in the starred ring
    code, out, _ = run(capsys, "decompose", "--form", "G", "--ring", "MOD_GAMMA02_STAR", "--terms", "30")
    assert code == EXIT_OK and "NOT_IN_SPAN" in out


def test_decompose_argument_errors(capsys):
    assert run(capsys, "decompose", "--ring", "QM_GAMMA02")[0] == EXIT_USAGE
    assert run(capsys, "decompose", "--k", "3", "--form", "C", "--ring", "QM_GAMMA02")[0] == EXIT_USAGE
    assert run(capsys, "decompose", "--k", "3", "--ring", "QM_GAMMA02", "--terms", "10")[0] == EXIT_USAGE
    assert run(capsys, "decompose", "--form", "C", "--ring", "QM_GAMMA02", "--weight", "3")[0] == EXIT_USAGE


def test_decompose_underdetermined_exits_one(capsys, monkeypatch):
    from qmf.linalg import SolveStatus
    from qmf.rings import DecompositionReport

    monkeypatch.setattr(cli, "decompose",
                        lambda f, b: DecompositionReport(b, None, SolveStatus.UNDERDETERMINED, f.prec))
    code, _, _ = run(capsys, "decompose", "--form", "C", "--ring", "MOD_GAMMA02", "--terms", "20")
    assert code == EXIT_FAIL
