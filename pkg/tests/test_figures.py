"""
Figure presets and the preset registry; presets with sweeps are marked slow.
"""
import json
import os

import pytest

from figures import FIGURE_REGISTRY, reproduce_figure


def test_registry():
    assert sorted(FIGURE_REGISTRY) == ["fig1", "fig3", "fig4", "fig5", "fig6", "fig7"]
    with pytest.raises(ValueError):
        reproduce_figure("fig2")


def test_kernel_shapes(tmp_path):
    bundle = reproduce_figure("fig1", str(tmp_path))
    assert all(os.path.exists(path) for path in bundle.files)
    assert bundle.summary["kernels"]["gamma:p=2"]["variance"] == pytest.approx(0.5)
    assert bundle.summary["kernels"]["dirac"]["variance"] == 0.0


def test_uniform_region(tmp_path):
    bundle = reproduce_figure("fig3", str(tmp_path))
    assert set(bundle.summary["curves"]) == {"0.2", "0.5", "1", "1.5", "1.9"}
    assert all(curve["points"] > 0 for curve in bundle.summary["curves"].values())
    assert os.path.exists(tmp_path / "fig3_sine_derivative.csv")


def test_gamma_transform_levels(tmp_path):
    bundle = reproduce_figure("fig5", str(tmp_path))
    with open(tmp_path / "fig5_summary.json", encoding='utf-8') as f:
        summary = json.load(f)
    assert summary["thresholds"]["r_lower"] == pytest.approx(1.35)
    assert summary["thresholds"]["r_upper"] == pytest.approx(3.675)
    assert summary["hopf"]["p1_r5"] == []
    assert [p["tau_m"] for p in summary["hopf"]["p2_r5"]] == pytest.approx([1.341, 10.177], abs=1e-3)
    assert len(summary["hopf"]["p3_r4"]) == 1
    assert bundle.files[-1].endswith("fig5_summary.json")


@pytest.mark.slow
def test_uniform_sweep_onset(tmp_path):
    bundle = reproduce_figure("fig4", str(tmp_path))
    assert bundle.summary["hopf"][0]["tau_m"] == pytest.approx(0.8521, abs=1e-3)
    sweep = bundle.summary["sweeps"]["bifurcation"]
    assert sweep["failures"] == 0
    assert sweep["onset"] == pytest.approx(0.8521, abs=0.02)
    assert sweep["window"] is None


@pytest.mark.slow
def test_strong_gamma_sweep_window(tmp_path):
    bundle = reproduce_figure("fig6", str(tmp_path))
    sweep = bundle.summary["sweeps"]["bifurcation"]
    assert sweep["failures"] == 0
    assert sweep["hopf_delays"] == pytest.approx([1.341, 10.177], abs=1e-3)
    assert sweep["window"] == pytest.approx([1.341, 10.177], abs=0.05)


@pytest.mark.slow
def test_gamma_p3_sweeps(tmp_path):
    bundle = reproduce_figure("fig7", str(tmp_path))
    window = bundle.summary["sweeps"]["bifurcation_r_1.8"]
    assert window["failures"] == 0
    assert window["window"] == pytest.approx([2.4677, 19.773], abs=0.05)
    single = bundle.summary["sweeps"]["bifurcation_r_4"]
    assert single["failures"] == 0
    assert single["onset"] == pytest.approx(0.79747, abs=0.05)
    assert single["window"] is None
