"""
Command-line and config-file parsing.
"""
import json
from pathlib import Path

import pytest

from model import GammaKernel, ModelParams, UniformKernel
from utils.errors import ConfigError
from utils.run_config import parse_config
from utils.text_reader import TextReader


@pytest.fixture(autouse=True)
def no_worker_env(monkeypatch):
    monkeypatch.delenv("DELAY_LOGISTIC_WORKERS", raising=False)


def write_config(tmp_path, data):
    path = tmp_path / "run.json"
    path.write_text(json.dumps(data), encoding="utf-8")
    return str(path)


def test_flags():
    config = parse_config(["classify", "--kernel", "gamma:p=2", "--r", "5", "--K", "5", "--D", "3", "--tau", "5"])
    assert config.command == "classify"
    assert config.kernel == GammaKernel(2)
    assert config.params == ModelParams(r=5.0, K=5.0, D=3.0)
    assert config.tau == 5.0
    assert config.workers == 1


def test_defaults():
    config = parse_config(["equilibrium"])
    assert config.params == ModelParams(r=2.0, K=5.0, D=0.0)
    assert config.n_points == 41
    assert config.output is None


def test_flag_overrides_config_file(tmp_path):
    path = write_config(tmp_path, {"command": "simulate", "kernel": "uniform:sigma=1", "r": 2, "D": 3, "tau": 0.8})
    config = parse_config(["--config", path, "--tau", "0.9"])
    assert config.command == "simulate"
    assert config.kernel == UniformKernel(1.0)
    assert config.params.D == 3.0
    assert config.tau == 0.9


@pytest.mark.parametrize("data", [
    {"command": "equilibrium", "colour": "red"},
    {"command": "equilibrium", "r": "fast"},
    {"command": "equilibrium", "n_points": 2.5},
    {"command": "equilibrium", "workers": True},
])
def test_bad_config_file(tmp_path, data):
    with pytest.raises(ConfigError):
        parse_config(["--config", write_config(tmp_path, data)])


def test_config_file_must_exist_and_parse(tmp_path):
    with pytest.raises(ConfigError):
        parse_config(["--config", str(tmp_path / "missing.json")])
    broken = tmp_path / "broken.json"
    broken.write_text("{not json", encoding="utf-8")
    with pytest.raises(ConfigError):
        parse_config(["--config", str(broken)])


@pytest.mark.parametrize("argv", [
    ["classify", "--kernel", "uniform:sigma=2.5", "--tau", "1"],
    ["classify", "--kernel", "gamma:p=0", "--tau", "1"],
    ["classify", "--kernel", "lognormal", "--tau", "1"],
    ["classify"],
    ["simulate", "--tau", "-1"],
    ["bifurcation", "--tau-min", "1"],
    ["bifurcation", "--tau-min", "2", "--tau-max", "1"],
    ["equilibrium", "--r", "0"],
    ["equilibrium", "--K", "-5"],
    ["equilibrium", "--D", "-1"],
    ["equilibrium", "--step", "0"],
    ["equilibrium", "--n-points", "1"],
    ["equilibrium", "--workers", "0"],
    ["reproduce-figure"],
    ["reproduce-figure", "--figure", "fig2"],
    ["integrate"],
    [],
])
def test_invalid_arguments(argv):
    with pytest.raises(ConfigError):
        parse_config(argv)


def test_error_names_field():
    with pytest.raises(ConfigError, match="tau"):
        parse_config(["classify"])


def test_round_trip_through_config_file(tmp_path):
    original = parse_config([
        "bifurcation", "--kernel", "uniform:sigma=0.5", "--r", "2", "--D", "3",
        "--tau-min", "0.5", "--tau-max", "1.2", "--n-points", "8", "--step", "0.002",
    ])
    path = write_config(tmp_path, original.to_dict())
    assert parse_config(["--config", path]) == original


def test_workers_from_environment(monkeypatch):
    monkeypatch.setenv("DELAY_LOGISTIC_WORKERS", "4")
    assert parse_config(["equilibrium"]).workers == 4
    assert parse_config(["equilibrium", "--workers", "2"]).workers == 2
    monkeypatch.setenv("DELAY_LOGISTIC_WORKERS", "many")
    with pytest.raises(ConfigError):
        parse_config(["equilibrium"])


def test_sim_config():
    config = parse_config(["simulate", "--tau", "1", "--step", "0.01", "--t-end", "50", "--history", "4"])
    sim = config.sim_config
    assert (sim.step, sim.t_end, sim.history_value) == (0.01, 50.0, 4.0)
    assert parse_config(["simulate", "--tau", "1"]).sim_config.step is None


def test_relative_config_path_resolves_from_project_root():
    reader = TextReader()
    expected = Path(__file__).resolve().parent.parent / "configs" / "missing_run.json"
    assert reader.get_full_path("configs/missing_run.json").resolve() == expected
    absolute = Path(__file__).resolve()
    assert reader.get_full_path(str(absolute)) == absolute
