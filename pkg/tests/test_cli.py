from __future__ import annotations

import json

import numpy as np
import pytest

import cvxenv as cv
from cvxenv import cli


def run_cli(*args):
    return cli.main(list(args))


def read_report(out_dir):
    return json.loads((out_dir / "report.json").read_text())


def test_list_functions_table(capsys):
    assert run_cli("list-functions") == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert len(lines) == 1 + 12
    assert lines[0].split()[0] == "name"
    assert lines[1].startswith("exp")


def test_run_writes_the_three_files(tmp_path):
    out = tmp_path / "o"
    rc = run_cli("run", "--function", "doublewell", "--points", "51",
                 "--oracle", "--out", str(out))
    assert rc == 0
    for name in ("grid.csv", "report.json", "config.json"):
        assert (out / name).exists()
    lines = (out / "grid.csv").read_text().strip().splitlines()
    assert lines[0] == "x1,f,V_dp,V_oracle"
    assert len(lines) == 1 + 51
    report = read_report(out)
    assert report["solvers"]["dp"]["min_gap"] <= 1e-9
    assert report["comparisons"]["dp_vs_oracle_sup"] <= 1e-6
    config = json.loads((out / "config.json").read_text())
    assert config["seed"] == 0 and config["points"] == 51


def test_csv_floats_survive_round_trip(tmp_path):
    out = tmp_path / "o"
    assert run_cli("run", "--function", "doublewell", "--points", "21",
                   "--out", str(out)) == 0
    tf = cv.get_function("doublewell")
    grid = cv.grid_for(tf, 21)
    f = cv.sample_on_grid(tf, grid)
    rows = (out / "grid.csv").read_text().strip().splitlines()[1:]
    parsed = np.array([[float(v) for v in row.split(",")] for row in rows])
    assert np.array_equal(parsed[:, 1], f)
    assert np.array_equal(parsed[:, 0], grid.coords()[:, 0])


def test_run_solver_all_matches_documented_example(tmp_path):
    out = tmp_path / "o"
    rc = run_cli("run", "--function", "doublewell", "--solver", "all",
                 "--points", "201", "--seed", "0", "--out", str(out))
    assert rc == 0
    lines = (out / "grid.csv").read_text().strip().splitlines()
    assert len(lines) == 1 + 201
    assert lines[0] == "x1,f,V_dp,V_ql"
    report = read_report(out)
    assert report["solvers"]["dp"]["min_gap"] <= 1e-9
    assert "qvi" in report["solvers"] and "async_ql" in report["solvers"]
    assert report["solvers"]["qvi"]["vs_dp_sup"] <= 1e-8


def test_qvi_values_land_in_the_dp_column(tmp_path):
    out = tmp_path / "o"
    assert run_cli("run", "--function", "quadratic", "--points", "21",
                   "--solver", "qvi", "--out", str(out)) == 0
    lines = (out / "grid.csv").read_text().strip().splitlines()
    assert lines[0] == "x1,f,V_dp"


def test_compare_reports_both_error_families(tmp_path, capsys):
    out = tmp_path / "o"
    rc = run_cli("compare", "--function", "doublewell", "--points", "21",
                 "--steps", "50000", "--out", str(out))
    assert rc == 0
    report = read_report(out)
    for key in ("dp_vs_learning_sup", "dp_vs_learning_mean",
                "dp_vs_oracle_sup", "dp_vs_oracle_mean"):
        assert key in report["comparisons"]
    printed = capsys.readouterr().out
    assert "dp_vs_learning_sup" in printed
    assert not (out / "grid.csv").exists()


def test_compare_rejects_non_learner_solver(tmp_path, capsys):
    rc = run_cli("compare", "--function", "doublewell", "--points", "21",
                 "--out", str(tmp_path / "o"), "--config",
                 str(_write_config(tmp_path, {"solver": "dp"})))
    assert rc == 2


def _write_config(tmp_path, payload):
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps(payload))
    return path


def test_config_file_precedence(tmp_path):
    cfg = _write_config(tmp_path, {"points": 21, "seed": 7, "margin": 0.2})
    out = tmp_path / "o"
    rc = run_cli("run", "--function", "doublewell", "--seed", "9",
                 "--config", str(cfg), "--out", str(out))
    assert rc == 0
    echoed = json.loads((out / "config.json").read_text())
    assert echoed["points"] == 21      # from the file
    assert echoed["margin"] == 0.2     # from the file
    assert echoed["seed"] == 9         # flag beats file


def test_configuration_errors_exit_2(tmp_path, capsys):
    assert run_cli("run", "--function", "nosuch", "--out", str(tmp_path / "a")) == 2
    assert "unknown function" in capsys.readouterr().err
    assert run_cli("run", "--function", "exp", "--points", "20",
                   "--out", str(tmp_path / "b")) == 2
    assert run_cli("run", "--function", "exp", "--domain", "1:2:3",
                   "--out", str(tmp_path / "c")) == 2
    assert run_cli("run", "--function", "exp", "--margin", "1.5",
                   "--out", str(tmp_path / "d")) == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run_cli("run", "--function", "exp", "--config", str(bad),
                   "--out", str(tmp_path / "e")) == 2
    unknown = _write_config(tmp_path, {"bogus_key": 1})
    assert run_cli("run", "--function", "exp", "--config", str(unknown),
                   "--out", str(tmp_path / "f")) == 2


def test_domain_flag_reaches_the_grid(tmp_path):
    out = tmp_path / "o"
    assert run_cli("run", "--function", "exp", "--points", "11",
                   "--domain", "0:4", "--out", str(out)) == 0
    rows = (out / "grid.csv").read_text().strip().splitlines()[1:]
    xs = [float(r.split(",")[0]) for r in rows]
    assert xs[0] == 0.0 and xs[-1] == 4.0


def test_invariant_violation_exits_1(tmp_path, monkeypatch):
    real = cli.dp_mod.value_iteration

    def truncated(grid, f, cfg=None, v0=None):
        return real(grid, f, cv.SolveConfig(max_sweeps=2))

    monkeypatch.setattr(cli.dp_mod, "value_iteration", truncated)
    rc = run_cli("run", "--function", "doublewell", "--points", "51",
                 "--out", str(tmp_path / "o"))
    assert rc == 1


def test_argparse_rejects_unknown_solver(tmp_path):
    with pytest.raises(SystemExit) as excinfo:
        run_cli("run", "--function", "exp", "--solver", "magic",
                "--out", str(tmp_path / "o"))
    assert excinfo.value.code == 2
