import json

import numpy as np
import pytest

from obstacle_dg.cli import main
from obstacle_dg.config import ConfigError, build_config, load_config
from obstacle_dg.dg_space import Mesh1D
from obstacle_dg.metrics import grid_error
from obstacle_dg.projection import l2_project
from obstacle_dg.runs import run


def write(tmp_path, cfg, name="cfg.json"):
    p = tmp_path / name
    p.write_text(json.dumps(cfg))
    return str(p)


def test_presets_and_overrides(tmp_path):
    path = write(tmp_path, {"problem": "example1", "scheme": "sldg", "obstacle": {"variant": "exact_window"}})
    cfg = load_config(path, ["N=40", "schedule.frac=0.5", "obstacle.window=sampled"])
    assert cfg.N == 40 and cfg.schedule == {"kind": "dt_eq_frac_h", "frac": 0.5}
    assert cfg.obstacle.name == "sin_pi" and cfg.obstacle.variant == "exact_window"
    assert cfg.obstacle.window == "sampled"
    assert cfg.exact == "example1"


@pytest.mark.parametrize("raw, field", [
    ({"N": -3}, "N"),
    ({"scheme": "fd"}, "scheme"),
    ({"T": 0}, "T"),
    ({"velocity": -1}, "velocity"),
    ({"schedule": {"kind": "fixed_dt"}}, "schedule"),
    ({"obstacle": {"name": "sin_pi", "variant": "x"}}, "obstacle.variant"),
    ({"dimension": 2, "scheme": "sldg", "velocity": [1, 1], "initial": "example2"}, "scheme"),
    ({"bogus": 1}, "bogus"),
])
def test_validation_names_field(raw, field):
    with pytest.raises(ConfigError) as info:
        build_config(raw)
    assert info.value.field == field


def test_malformed_config_exits_1(tmp_path, capsys):
    path = write(tmp_path, {"problem": "example1", "N": -5})
    out = tmp_path / "sol.csv"
    assert main(["solve", "--config", path, "--out", str(out)]) == 1
    assert not out.exists()
    assert "N" in capsys.readouterr().err


def test_missing_config_file(tmp_path):
    assert main(["solve", "--config", str(tmp_path / "nope.json")]) == 1


def test_solve_writes_dump(tmp_path, capsys):
    path = write(tmp_path, {"problem": "example1", "N": 20, "T": 1.0})
    out = tmp_path / "fig1.csv"
    assert main(["solve", "--config", path, "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "x,u_h" and len(lines) == 201
    summary = capsys.readouterr().out
    assert "N=20" in summary and "L1=" in summary


def test_exact_shift_error_equals_projection_error():
    cfg = build_config({"problem": "sin_advection", "scheme": "sldg", "N": 16, "T": 0.5,
                        "schedule": {"kind": "dt_eq_frac_h", "frac": 1.0}})
    result = run(cfg)
    mesh = Mesh1D(-1, 1, 16)
    p0 = l2_project(lambda x: np.sin(np.pi * x), mesh, 2)
    # shifting by 4 cells maps the projection error onto itself
    e0 = grid_error(p0, lambda x: np.sin(np.pi * x), 50)
    assert result.errors == pytest.approx(e0, rel=1e-10)


def test_table3_steps_column(tmp_path, capsys):
    path = write(tmp_path, {"problem": "example1", "scheme": "sldg",
                            "schedule": {"kind": "step_count_rule", "rule": "paper_table3"}})
    assert main(["convergence", "--config", path, "--grids", "80,160,320,640"]) == 0
    rows = [l.split(",") for l in capsys.readouterr().out.splitlines() if l and l[0].isdigit()]
    assert [int(r[1]) for r in rows] == [34, 52, 79, 121]


def test_smooth_two_row_orders_positive(tmp_path, capsys):
    path = write(tmp_path, {"problem": "sin_advection", "scheme": "rkdg", "degree": 1})
    assert main(["convergence", "--config", path, "--grids", "10,20"]) == 0
    out = capsys.readouterr().out
    row = [l for l in out.splitlines() if l.startswith("20,")][0].split(",")
    assert all(float(row[i]) > 0 for i in (3, 5, 7))


def test_convergence_is_deterministic_and_self_describing(tmp_path):
    path = write(tmp_path, {"problem": "example1", "scheme": "sldg", "schedule": {"kind": "dt_eq_frac_h", "frac": 0.5}})
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(["convergence", "--config", path, "--grids", "20,40", "--out", str(a)]) == 0
    assert main(["convergence", "--config", path, "--grids", "20,40", "--out", str(b), "--jobs", "2"]) == 0
    assert a.read_bytes() == b.read_bytes()
    text = a.read_text()
    for key in ("# schedule:", "# obstacle:", "# samples_per_cell: 50", "# grids: 20,40"):
        assert key in text


def test_bad_grids(tmp_path):
    path = write(tmp_path, {"problem": "example1"})
    assert main(["convergence", "--config", path, "--grids", "80,40"]) == 1
    assert main(["convergence", "--config", path, "--grids", "a,b"]) == 1


def test_2d_solve(tmp_path, capsys):
    path = write(tmp_path, {"problem": "example2", "N": 6})
    out = tmp_path / "u2.csv"
    assert main(["solve", "--config", path, "--out", str(out)]) == 0
    assert out.read_text().startswith("x,y,u_h")


def test_custom_sampled_obstacle_runs():
    cfg = build_config({"problem": "example1", "N": 40, "obstacle": {"name": "custom_sampled"}})
    ref = build_config({"problem": "example1", "N": 40})
    assert run(cfg).errors == pytest.approx(run(ref).errors, rel=1e-6)


def test_proptest_suites(capsys):
    assert main(["proptest", "--suite", "lemma51", "--seed", "3"]) == 0
    out = capsys.readouterr().out
    assert "seed=3" in out and out.count("PASS") == 2
    assert main(["proptest", "--suite", "obstacle_bound"]) == 0
    assert main(["proptest", "--suite", "missing"]) == 1
    assert "lemma51" in capsys.readouterr().err
