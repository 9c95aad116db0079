import math

import pytest

from fockgauge import SweepConfig, calibrate, figure_rows, sweep
from fockgauge.cli import dumps, format_csv
from fockgauge.errors import SchemaError
from fockgauge.verify import DEFAULT_TOLERANCES, sweep_config_from_dict


# ------------------------------------------------------------------ sweep

def test_empty_sweep():
    report = sweep(SweepConfig(n_pure=0, n_mixed=0, cutoff=8))
    assert report.total_violations == 0
    assert all(t.checked == 0 for t in report.tallies.values())
    assert report.min_trace_ratio is None
    assert '"worst_slack": null' in dumps(report.to_dict())


def test_small_sweep_clean():
    report = sweep(SweepConfig(n_pure=200, n_mixed=50, cutoff=16, rank=4, seed=42))
    assert report.total_violations == 0
    assert report.skipped == 0
    assert report.tallies["tight_scan"].checked == 250
    assert report.tallies["covariance_floor"].checked == 250


def test_sweep_determinism():
    config = SweepConfig(n_pure=60, n_mixed=20, cutoff=12, rank=3, seed=7)
    first = sweep(config)
    second = sweep(config)
    assert dumps(first.to_dict()) == dumps(second.to_dict())
    assert first.wall_time != 0.0  # measured, but excluded from serialization
    assert "wall_time" not in first.to_dict()


def test_sweep_trace_ratio_strictly_above_one():
    report = sweep(SweepConfig(n_pure=300, n_mixed=0, cutoff=16, seed=11))
    assert report.min_trace_ratio is not None
    assert report.min_trace_ratio > 1.0


def test_sweep_covers_every_gauge_inequality():
    # oracle closure: every inequality the gauge report asserts has a tally
    from fockgauge import coherent, ellipse, full_report, summarize

    s = summarize(coherent(1.0))
    report = full_report(s, ellipse(s))
    expected = set(report.all_records()) - {"squeezing"}
    expected |= {"tight_scan", "closed_form_agreement", "hierarchy", "hyperboloid_surface"}
    assert expected <= set(DEFAULT_TOLERANCES)
    assert set(sweep(SweepConfig(n_pure=1, n_mixed=0, cutoff=4)).tallies) == set(
        DEFAULT_TOLERANCES
    )


def test_sweep_skips_truncation_suspect_states(monkeypatch):
    # a clipped coherent tail flags the summary; the sweep must exclude the
    # state from every tally and count it separately
    import numpy as np

    import fockgauge.verify as verify_mod
    from fockgauge import FockVector, coherent

    amps = coherent(2.0).amplitudes[:6]
    clipped = FockVector(amps / np.linalg.norm(amps))
    original = verify_mod.random_state

    def patched(cutoff, kind, rank=1, seed=0):
        index = seed[1] if isinstance(seed, list) else 0
        if index == 0:
            return clipped
        return original(cutoff, kind, rank=rank, seed=seed)

    monkeypatch.setattr(verify_mod, "random_state", patched)
    report = verify_mod.sweep(SweepConfig(n_pure=5, n_mixed=0, cutoff=8, seed=3))
    assert report.skipped == 1
    assert report.tallies["tight_scan"].checked == 4


def test_sweep_config_validation():
    with pytest.raises(ValueError):
        SweepConfig(n_pure=-1, n_mixed=0, cutoff=8)
    with pytest.raises(ValueError):
        SweepConfig(n_pure=0, n_mixed=0, cutoff=999)
    with pytest.raises(ValueError):
        SweepConfig(n_pure=0, n_mixed=0, cutoff=8, tolerances={"bogus": 1e-9})
    config = sweep_config_from_dict({"n_pure": 1, "n_mixed": 0, "cutoff": 4})
    assert config.rank == 1 and config.seed == 0
    with pytest.raises(SchemaError):
        sweep_config_from_dict({"n_pure": 1, "cutoff": 4})
    with pytest.raises(SchemaError):
        sweep_config_from_dict({"n_pure": 1, "n_mixed": 0, "cutoff": 4, "foo": 1})
    with pytest.raises(SchemaError):
        sweep_config_from_dict({"n_pure": 1.5, "n_mixed": 0, "cutoff": 4})


# ------------------------------------------------------------------ calibrate

def test_calibration_constants():
    report = calibrate()
    assert report.c_tight == pytest.approx(0.5, abs=1e-10)
    assert report.c1 == report.c_tight
    assert report.c2 == 0.25


def test_calibration_anchors():
    report = calibrate()
    assert len(report.anchors) == 4
    estimates = [a["c_estimate"] for a in report.anchors]
    assert max(estimates) - min(estimates) <= 1e-8
    for anchor in report.anchors:
        assert abs(anchor["closed_slack"]) <= 1e-10
        assert abs(anchor["scan_slack"]) <= 1e-8


def test_calibration_table_rows():
    report = calibrate()
    tags = [row["tag"] for row in report.printed_vs_derived]
    assert tags == ["tight_closed_form", "relaxed_lambda_plus", "relaxed_trace"]
    ratios = {row["tag"]: row["ratio"] for row in report.printed_vs_derived}
    assert ratios["tight_closed_form"] == pytest.approx(2.0, abs=1e-9)
    assert ratios["relaxed_lambda_plus"] == pytest.approx(2.0, abs=1e-9)
    assert ratios["relaxed_trace"] == pytest.approx(4.0)


def test_calibration_determinism():
    assert dumps(calibrate().to_dict()) == dumps(calibrate().to_dict())


# ------------------------------------------------------------------ figures

def test_fig2_shape_and_bounds():
    header, rows = figure_rows("fig2", 16)
    assert header == ["var_a_abs", "cov_ada", "bound_lambda_plus", "bound_trace"]
    assert len(rows) == 16 * 16
    for v, c, b_lambda, b_trace in rows:
        assert c >= math.sqrt(0.25 + v * v) - 1e-12
        assert b_lambda == pytest.approx(0.5 / (c + v))
        assert b_trace == pytest.approx(0.25 / c)
        assert b_lambda >= b_trace - 1e-12  # lambda-plus floor is the tighter one


def test_fig3_vertex_and_surfaces():
    header, rows = figure_rows("fig3", 17)
    assert header == ["re_var_a", "im_var_a", "hyperboloid", "cone"]
    vertex = [row for row in rows if row[0] == 0.0 and row[1] == 0.0]
    assert len(vertex) == 1
    assert vertex[0][2] == pytest.approx(0.5)
    assert vertex[0][3] == pytest.approx(0.5)
    for re, im, hyper, cone in rows:
        spread = math.hypot(re, im)
        assert hyper == pytest.approx(math.sqrt(0.25 + spread**2))
        assert cone == pytest.approx(spread + 0.5)
        assert cone >= hyper - 1e-12  # the cone lies above the hyperboloid


def test_fig4_rows():
    header, rows = figure_rows("fig4", 16)
    assert header == ["gamma_re", "gamma_im", "cov_ada", "var_n", "bound", "rel_gap"]
    assert len(rows) == 3 * 16
    coherent_rows = [r for r in rows if r[0] == 0.0 and r[1] == 0.0]
    assert len(coherent_rows) == 3  # gamma = 0 repeats once per phase branch
    for row in coherent_rows:
        assert row[2] == pytest.approx(0.5, abs=1e-10)  # cov_ada of |alpha=3>
        assert row[3] == pytest.approx(9.0, abs=1e-8)  # Poisson variance
    for _, _, cov, var_n, bound, rel_gap in rows:
        assert var_n - bound >= 0.0
        assert rel_gap == pytest.approx((var_n - bound) / bound)


def test_figure_validation():
    with pytest.raises(ValueError):
        figure_rows("fig9", 16)
    with pytest.raises(ValueError):
        figure_rows("fig2", 8)
    with pytest.raises(ValueError):
        figure_rows("fig2", 4096)


def test_figure_csv_determinism():
    header, rows = figure_rows("fig3", 16)
    text = format_csv(header, rows)
    header2, rows2 = figure_rows("fig3", 16)
    assert format_csv(header2, rows2) == text
    assert text.startswith("re_var_a,im_var_a,hyperboloid,cone\n")
