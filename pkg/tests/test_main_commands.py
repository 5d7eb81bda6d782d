import json
import math

import pytest

import src.main as main_module
from src.utils.errors import DomainError, ParseError, PoleError, SpectrumError
from src.utils.matrix_file import parse_complex


def _run_json(capsys, argv):
    code = main_module.entry_point(argv)
    payload = json.loads(capsys.readouterr().out)
    return code, payload


def test_lfactor_from_argv(monkeypatch, capsys):
    monkeypatch.setattr(
        main_module.sys,
        "argv",
        ["main.py", "lfactor", "--place", "real", "--frob", "1", "--s", "1", "--alphas", "0"],
    )

    code = main_module.entry_point()
    payload = json.loads(capsys.readouterr().out)

    assert code == 0
    assert payload["command"] == "lfactor"
    assert payload["meta"] == {"seed": 0, "tol": 1e-10, "version": main_module.__version__}
    (result,) = payload["results"]
    assert parse_complex(result["value"]) == pytest.approx(1.0, rel=1e-13)
    assert result["place"] == "real"


def test_lfactor_nonarch_with_breakdown(capsys):
    code, payload = _run_json(capsys, ["lfactor", "--place", "nonarch", "--p", "2", "--s", "1", "--alphas", "0", "--breakdown"])
    assert code == 0
    result = payload["results"][0]
    assert parse_complex(result["value"]) == pytest.approx(2.0, rel=1e-14)
    assert len(result["breakdown"]) == 1


def test_lfactor_from_matrix_file(capsys, matrix_file):
    path = matrix_file("2\n0 0\n0 0\n")
    code, payload = _run_json(capsys, ["lfactor", "--place", "nonarch", "--p", "3", "--s", "1", "--matrix", str(path)])
    assert code == 0
    assert parse_complex(payload["results"][0]["value"]) == pytest.approx(2.25, rel=1e-14)


def test_lfactor_errors():
    with pytest.raises(PoleError) as excinfo:
        main_module.entry_point(["lfactor", "--place", "real", "--s", "0", "--alphas", "0"])
    assert excinfo.value.exit_code == 3
    with pytest.raises(ParseError):
        main_module.entry_point(["lfactor", "--place", "nonarch", "--s", "1", "--alphas", "0"])
    with pytest.raises(ParseError):
        main_module.entry_point(["lfactor", "--place", "real", "--s", "1"])
    with pytest.raises(DomainError):
        main_module.entry_point(["lfactor", "--place", "nonarch", "--p", "4", "--s", "1", "--alphas", "0"])


def test_usage_errors_exit_two():
    with pytest.raises(SystemExit) as excinfo:
        main_module.entry_point(["lfactor"])
    assert excinfo.value.code == 2
    with pytest.raises(SystemExit) as excinfo:
        main_module.entry_point(["volume", "--kind", "sphere"])
    assert excinfo.value.code == 2


def test_json_output_is_byte_identical_across_runs(capsys):
    argv = ["regdet", "--kind", "halfline", "--rho", "1", "--lambda", "0.5+0.25i", "--numeric"]
    main_module.entry_point(argv)
    first = capsys.readouterr().out
    main_module.entry_point(argv)
    assert capsys.readouterr().out == first


def test_regdet_halfline_numeric(capsys):
    code, payload = _run_json(capsys, ["regdet", "--kind", "halfline", "--rho", "1", "--lambda", "1", "--numeric"])
    result = payload["results"][0]
    assert code == 0
    assert parse_complex(result["det"]) == pytest.approx(math.sqrt(2 * math.pi), rel=1e-12)
    assert result["numeric_abs_diff"] < 1e-8


def test_regdet_fullline(capsys):
    code, payload = _run_json(capsys, ["regdet", "--kind", "fullline", "--rho", "i", "--lambda", "0.5", "--numeric"])
    result = payload["results"][0]
    assert parse_complex(result["det"]) == pytest.approx(1 - math.exp(math.pi), rel=1e-12)
    assert result["numeric_abs_diff"] < 1e-6


def test_regdet_rejects_inadmissible_spectrum():
    with pytest.raises(SpectrumError):
        main_module.entry_point(["regdet", "--kind", "fullline", "--rho=-i", "--lambda", "0.5"])


def test_regdet_disk(capsys):
    code, payload = _run_json(capsys, ["regdet", "--disk", "--mu", "0.7", "--hbar", "1.3", "--lambda", "2.1"])
    result = payload["results"][0]
    assert parse_complex(result["ratio"]) == pytest.approx(parse_complex(result["closed_form"]), rel=1e-10)


def test_qgamma_product_row(capsys):
    code, payload = _run_json(capsys, ["qgamma", "--q", "0.5", "--t", "0.5", "0.25", "--n", "3"])
    rows = payload["results"]
    assert code == 0
    assert len(rows) == 3
    assert parse_complex(rows[0]["q_gamma"]) == pytest.approx(3.4627466194550636, rel=1e-10)
    assert parse_complex(rows[0]["q_pochhammer"]) == pytest.approx(0.5 * 0.75 * 0.875, rel=1e-14)
    product = parse_complex(rows[0]["q_gamma"]) * parse_complex(rows[1]["q_gamma"])
    assert parse_complex(rows[2]["q_l_factor"]) == pytest.approx(product, rel=1e-10)


def test_volume_kinds(capsys, matrix_file):
    _, payload = _run_json(capsys, ["volume", "--kind", "equivariant", "--lambdas", "1", "1", "--mu", "2"])
    row = payload["results"][0]
    assert row["volume"] == pytest.approx(4 * math.pi**2, rel=1e-13)
    assert parse_complex(row["odd_augmented"]) == pytest.approx(row["volume"], rel=1e-12)

    path = matrix_file("2\n0 1\n1 0\n")
    _, payload = _run_json(capsys, ["volume", "--kind", "berezin", "--matrix", str(path)])
    assert payload["results"][0]["abs_diff"] < 1e-12

    _, payload = _run_json(capsys, ["volume", "--kind", "character", "--beta", "1", "--lambdas", "1", "2", "--degree", "30"])
    row = payload["results"][0]
    assert row["error"] <= row["tail_bound"] + 1e-14

    _, payload = _run_json(capsys, ["volume", "--kind", "mode3d", "--beta", "1", "--hbar", "1", "--lambdas", "1", "2"])
    assert payload["results"][-1]["rel_diff"] < 1e-9

    _, payload = _run_json(capsys, ["volume", "--kind", "q-classical", "--hbar", "1", "--lambdas", "2.5", "--betas", "1e-1", "1e-2"])
    assert all(row["passed"] for row in payload["results"])
    assert payload["results"][1]["error"] < payload["results"][0]["error"]

    _, payload = _run_json(capsys, ["volume", "--kind", "gaussian-mc", "--lambdas", "6.283185307179586", "--mc-samples", "500"])
    assert payload["results"][0]["abs_diff"] < 1e-12


def test_volume_needs_its_inputs():
    with pytest.raises(ParseError):
        main_module.entry_point(["volume", "--kind", "character", "--beta", "1", "--lambdas", "1"])


def test_verify_exit_codes(capsys, mocker):
    code, payload = _run_json(capsys, ["verify", "--suite", "all", "--samples", "0"])
    assert code == 0
    assert [suite["suite"] for suite in payload["results"]] == list(main_module.SUITES)

    code, payload = _run_json(capsys, ["verify", "--suite", "theorem21", "--samples", "5", "--seed", "7"])
    assert code == 0
    assert payload["results"][0]["pass_count"] == 5

    from src.validation import suites

    mocker.patch.object(suites, "theorem21_specialization", side_effect=PoleError("forced"))
    code, payload = _run_json(capsys, ["verify", "--suite", "theorem21", "--samples", "2"])
    assert code == 1
    assert payload["results"][0]["fail_count"] == 2


def test_verify_csv_and_plain(capsys):
    main_module.entry_point(["verify", "--suite", "theorem21", "--samples", "3", "--format", "csv"])
    lines = capsys.readouterr().out.splitlines()
    assert lines[0].startswith("suite,identity,lhs,rhs")
    assert len(lines) == 4

    main_module.entry_point(["verify", "--suite", "theorem21", "--samples", "2", "--format", "plain"])
    text = capsys.readouterr().out
    assert "suite=theorem21 passed=2 failed=0" in text


def test_out_file(tmp_path, capsys):
    target = tmp_path / "out" / "lfactor.json"
    main_module.entry_point(["lfactor", "--place", "complex", "--s", "2", "--alphas", "0", "--out", str(target)])
    assert capsys.readouterr().out == ""
    payload = json.loads(target.read_text(encoding="utf-8"))
    # (2 pi)^-2 Gamma(2)
    assert parse_complex(payload["results"][0]["value"]) == pytest.approx((2 * math.pi) ** -2, rel=1e-13)


def test_convergence_command(capsys):
    code, payload = _run_json(capsys, ["convergence", "--target", "classical_limit", "--lambdas", "1", "--grid", "1e-2", "1e-3", "1e-4"])
    assert code == 0
    assert len(payload["results"]) == 3
    assert all(row["within_bound"] for row in payload["results"])

    main_module.entry_point(["convergence", "--target", "qgamma", "--q", "0.5", "--t", "0.5", "--grid", "5", "10", "--format", "plain"])
    assert "target=qgamma rows=2 monotone=true" in capsys.readouterr().out

    code, payload = _run_json(capsys, ["convergence", "--target", "q_classical_limit", "--hbar", "1", "--lambdas", "0.5", "--grid", "1e-1", "1e-2"])
    assert code == 0
    assert [row["within_bound"] for row in payload["results"]] == [True, True]

    with pytest.raises(ParseError):
        main_module.entry_point(["convergence", "--target", "qgamma", "--q", "0.5", "--t", "0.5"])


def test_force_process_exit_flushes_before_exiting(mocker):
    shutdown = mocker.patch.object(main_module.logging, "shutdown")
    hard_exit = mocker.patch.object(main_module.os, "_exit")
    main_module._force_process_exit(3)
    shutdown.assert_called_once_with()
    hard_exit.assert_called_once_with(3)
