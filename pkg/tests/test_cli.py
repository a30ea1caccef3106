import json

import pytest

from bmoakit.cli import RunConfig, UsageError, blaschke_taylor, main, parse_symbol


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_parse_symbols():
    assert parse_symbol("identity").kind == "identity"
    assert parse_symbol("constant:2").params == (2,)
    assert parse_symbol("poly:0,1,1+2j").params == (0, 1, 1 + 2j)
    assert parse_symbol("0.5").kind == "constant"
    with pytest.raises(UsageError):
        parse_symbol("blaschke:1.5")
    with pytest.raises(UsageError):
        parse_symbol("wobble:1")
    with pytest.raises(UsageError):
        parse_symbol("poly:1,,2")


def test_blaschke_truncation_bound():
    f, bound = blaschke_taylor(0.5, 30)
    w = 0.999
    exact = (0.5 - w) / (1 - 0.5 * w)
    assert abs(f(w) - exact) <= bound
    assert bound == pytest.approx(1.5 * 0.5 ** 30)


def test_run_config_validation(tmp_path):
    with pytest.raises(UsageError):
        RunConfig(grid_size=1000)
    with pytest.raises(UsageError):
        RunConfig(rho_list=(1.2,))
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps({"n_max": 16, "rho_list": [0.9]}))
    assert RunConfig.from_json(path.read_text()).n_max == 16
    with pytest.raises(UsageError):
        RunConfig.from_json('{"bogus": 1}')


def test_norm_examples(capsys, tmp_path):
    out = tmp_path / "n.json"
    assert main(["norm", "--poly", "0,1", "--json", str(out)]) == 0
    assert json.loads(out.read_text())["seminorm"] == pytest.approx(1.0, abs=1e-3)
    main(["norm", "--constant", "3", "--json", str(out)])
    rep = json.loads(out.read_text())
    assert rep["norm"] == 3 and rep["seminorm"] == 0
    main(["norm", "--poly", "1,1", "--json", str(out)])
    assert json.loads(out.read_text())["norm"] == pytest.approx(2.0, abs=1e-3)
    capsys.readouterr()


def test_norm_emit_curves(capsys, tmp_path):
    assert main(["norm", "--symbol", "blaschke:0.3", "--emit-curves", str(tmp_path)]) == 0
    lines = (tmp_path / "vmoa_profile.csv").read_text().splitlines()
    assert lines[0] == "r,value" and len(lines) == 7
    capsys.readouterr()


def test_norm_usage_errors(capsys):
    assert run(capsys, "norm")[0] == 2
    assert run(capsys, "norm", "--poly", "1,x")[0] == 2
    assert run(capsys, "norm", "--poly", "1", "--constant", "2")[0] == 2
    assert run(capsys, "frobnicate")[0] == 2


def test_numeric_error_exit(capsys, tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"grid_size": 2}))
    assert run(capsys, "norm", "--poly", "0,0,0,1", "--config", str(cfg))[0] == 3


def test_wco_examples(capsys, tmp_path):
    code, out, _ = run(capsys, "wco", "--psi", "constant:1", "--phi", "scaled_identity:0.5", "classify")
    assert code == 0 and out.splitlines()[0] == "compact"
    path = tmp_path / "e.json"
    assert main(["wco", "--psi", "constant:1", "--phi", "identity", "essnorm", "--json", str(path)]) == 0
    assert json.loads(path.read_text())["estimate"]["value"] == pytest.approx(1.0, abs=1e-3)
    assert main(["wco", "--psi", "constant:0", "--phi", "identity", "norm", "--json", str(path)]) == 0
    assert json.loads(path.read_text())["estimate"]["value"] == 0
    capsys.readouterr()


def test_wco_emit_curves(capsys, tmp_path):
    assert main(["wco", "--psi", "1", "--phi", "scaled_identity:0.5", "norm",
                 "--n-max", "8", "--emit-curves", str(tmp_path)]) == 0
    rows = (tmp_path / "power_seminorms.csv").read_text().splitlines()
    assert rows[0] == "n,seminorm" and len(rows) == 10
    capsys.readouterr()


def test_self_map_violation(capsys):
    code, _, err = run(capsys, "wco", "--psi", "1", "--phi", "poly:0.6,0.6", "norm")
    assert code == 4 and "boundary point" in err


def test_check_examples(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("BMOAKIT_OUTPUT_DIR", str(tmp_path))
    assert run(capsys, "check", "garsia_identity", "--count", "100", "--seed", "7")[0] == 0
    assert (tmp_path / "garsia_identity.jsonl").exists()
    assert (tmp_path / "garsia_identity_summary.csv").read_text().startswith("check_id,n,pass_rate,max_ratio")
    assert run(capsys, "check", "lemma26_constant2", "--pair", "1,identity")[0] == 0
    assert run(capsys, "check", "nosuch")[0] == 2


def test_check_failure_exit(capsys, tmp_path, monkeypatch):
    import bmoakit.verify as verify

    monkeypatch.setattr(verify, "load_pinned", lambda: {"littlewood_composition": {"pinned": 1e-6}})
    code, out, _ = run(capsys, "check", "littlewood_composition", "--pair", "z,identity",
                       "--out-dir", str(tmp_path))
    assert code == 1


def test_json_output_format(capsys, tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"output_format": "json"}))
    code, out, _ = run(capsys, "norm", "--poly", "0,1", "--config", str(cfg))
    assert code == 0 and json.loads(out)["norm"] == pytest.approx(1.0, abs=1e-3)
