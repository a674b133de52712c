"""
CSV and JSON emission: layout, determinism and Hopf re-validation.
"""
import csv
import json
import math

import pytest

from model import DiracKernel, GammaKernel, ModelParams
from simulation import BifurcationRow, BifurcationSweep, SimConfig, phase_portrait, simulate_dirac
from stability import Crossing, HopfPoint, hopf_curve_dpos, hopf_points_at
from utils.errors import NumericalError, OutputError
from utils.file_utils import ensure_output_directory, get_output_directory
from utils.result_writer import emit_csv, emit_summary, format_value, validated_hopf_rows

FIG_PARAMS = ModelParams(r=5.0, K=5.0, D=3.0)


def read_csv(path):
    with open(path, newline='', encoding='utf-8') as f:
        return list(csv.reader(f))


@pytest.mark.parametrize("value, text", [
    (None, ""),
    (True, "true"),
    (False, "false"),
    (3, "3"),
    (0.1, "0.1"),
    (1.0 / 3.0, "0.333333333333"),
    (math.nan, "nan"),
    (Crossing.LEFT_TO_RIGHT, "LeftToRight"),
    ("dirac", "dirac"),
])
def test_format_value(value, text):
    assert format_value(value) == text


def test_hopf_csv_layout(tmp_path):
    curve = hopf_curve_dpos(GammaKernel(2), 5.0, 3.0)
    [path] = emit_csv(curve, "hopf_gamma_p_2", str(tmp_path))
    with open(path, 'rb') as f:
        raw = f.read()
    assert b"\r\n" not in raw
    rows = read_csv(path)
    assert rows[0] == ["omega", "r", "tau_m", "crossing"]
    assert len(rows) == len(curve.points) + 1
    assert all(float(row[1]) > 3.675 for row in rows[1:])
    assert {row[3] for row in rows[1:]} <= {"LeftToRight", "RightToLeft"}


def test_output_is_deterministic(tmp_path):
    first = emit_csv(hopf_curve_dpos(GammaKernel(2), 5.0, 3.0), "a", str(tmp_path))[0]
    second = emit_csv(hopf_curve_dpos(GammaKernel(2), 5.0, 3.0), "b", str(tmp_path))[0]
    with open(first, 'rb') as f1, open(second, 'rb') as f2:
        assert f1.read() == f2.read()


def test_hopf_points_need_context(tmp_path):
    points = hopf_points_at(FIG_PARAMS, GammaKernel(2))
    [path] = emit_csv(points, "points", str(tmp_path), kernel=GammaKernel(2), K=5.0, D=3.0)
    assert len(read_csv(path)) == 3


def test_bogus_hopf_point_rejected():
    bogus = HopfPoint(omega=2.0, r=5.0, tau_m=1.0, crossing=Crossing.LEFT_TO_RIGHT)
    with pytest.raises(NumericalError):
        validated_hopf_rows([bogus], GammaKernel(2), 5.0, 3.0)


def test_bifurcation_csv(tmp_path):
    sweep = BifurcationSweep(kernel="dirac", params=FIG_PARAMS, rows=[
        BifurcationRow(tau_m=0.5, n_min=6.0, n_max=6.0, oscillating=False),
        BifurcationRow(tau_m=1.0, n_min=math.nan, n_max=math.nan, oscillating=False, error="step"),
    ])
    rows = read_csv(emit_csv(sweep, "bifurcation_dirac", str(tmp_path))[0])
    assert rows == [
        ["tau_m", "n_min", "n_max", "oscillating"],
        ["0.5", "6", "6", "false"],
        ["1", "nan", "nan", "false"],
    ]


def test_trajectory_and_phase_subsampling(tmp_path):
    trajectory = simulate_dirac(ModelParams(r=2.0, K=5.0), 1.0, SimConfig(step=0.01, t_end=20.0))
    rows = read_csv(emit_csv(trajectory, "trajectory", str(tmp_path), every=10)[0])
    assert rows[0] == ["t", "n", "delayed"]
    assert len(rows) - 1 == len(trajectory.times[::10])
    assert float(rows[2][0]) == pytest.approx(0.1)
    portrait = phase_portrait(trajectory)
    rows = read_csv(emit_csv(portrait, "phase", str(tmp_path))[0])
    assert rows[0] == ["n", "delayed"]
    assert len(rows) - 1 == len(portrait.n)


def test_unsupported_result(tmp_path):
    with pytest.raises(TypeError):
        emit_csv({"a": 1}, "nope", str(tmp_path))


def test_summary_is_sorted_json(tmp_path):
    path = emit_summary({"n_star": 2.0 / 3.0, "kernel": "dirac", "failed": math.nan,
                         "points": [Crossing.RIGHT_TO_LEFT]}, "summary", str(tmp_path))
    with open(path, encoding='utf-8') as f:
        text = f.read()
    data = json.loads(text)
    assert data == {"failed": None, "kernel": "dirac", "n_star": 0.666666666667, "points": ["RightToLeft"]}
    assert list(data) == sorted(data)
    assert text.endswith("\n")


def test_unwritable_output_directory(tmp_path):
    blocker = tmp_path / "blocker"
    blocker.write_text("", encoding="utf-8")
    with pytest.raises(OutputError):
        emit_summary({"kernel": "dirac"}, "summary", str(blocker / "out"))
    with pytest.raises(OutputError):
        emit_csv(hopf_points_at(FIG_PARAMS, DiracKernel()), "x", str(blocker / "out"),
                 kernel=DiracKernel(), K=5.0, D=3.0)


def test_output_directory_resolution(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    monkeypatch.delenv("DELAY_LOGISTIC_OUTPUT_DIR", raising=False)
    assert get_output_directory() == str(tmp_path / "output")
    monkeypatch.setenv("DELAY_LOGISTIC_OUTPUT_DIR", "runs")
    assert ensure_output_directory() == str(tmp_path / "runs")
    assert (tmp_path / "runs").is_dir()
    assert get_output_directory("explicit") == str(tmp_path / "explicit")
