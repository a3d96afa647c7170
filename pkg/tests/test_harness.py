import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from aaad import harness
from aaad.errors import DegenerateDeltas, NoTransitionFound, ShapeMismatch, SolverError
from aaad.harness import (ConvergenceReport, RunConfig, contact_width, l1_error,
                          oscillation_excess, plateau_overshoot, read_config_file, restrict,
                          run, runge_error_rate, snapshot_stem)


# ---------------------------------------------------------------------------
# Runge estimates

def test_runge_second_order_example():
    err, rate = runge_error_rate(1e-4, 4e-4)
    assert rate == pytest.approx(2.0) and err == pytest.approx(1e-8 / 3e-4)


def test_runge_fifth_order_example():
    _, rate = runge_error_rate(1e-5, 3.2e-4)
    assert rate == pytest.approx(5.0)


@pytest.mark.parametrize("d12, d24", [(0.0, 1e-3), (1e-3, -1.0), (2e-4, 2e-4)])
def test_runge_degenerate(d12, d24):
    with pytest.raises(DegenerateDeltas):
        runge_error_rate(d12, d24)


@given(st.floats(1e-12, 1.0), st.floats(1.1, 20.0))
def test_runge_recovers_geometric_rate(e, r):
    # differences of a sequence whose error shrinks by 2**p per refinement
    p = math.log2(r)
    _, rate = runge_error_rate(e, e * r)
    assert rate == pytest.approx(p, rel=1e-9)


def test_convergence_report_from_deltas_and_errors():
    rep = ConvergenceReport.from_deltas([10, 20, 40], [None, 4e-4, 1e-4])
    assert rep.errors[:2] == [None, None] and rep.rates[2] == pytest.approx(2.0)
    ex = ConvergenceReport.from_errors([10, 20, 40], [1.0, 0.25, 0.0625])
    assert ex.rates == [None, pytest.approx(2.0), pytest.approx(2.0)]
    assert "---" in ex.table().splitlines()[1]


# ---------------------------------------------------------------------------
# norms and restriction

def test_l1_examples():
    assert l1_error([1, 2, 3], [1, 2, 4], 0.5) == 0.5
    assert l1_error(np.ones((2, 2)), np.zeros((2, 2)), 0.25) == 1.0
    with pytest.raises(ShapeMismatch):
        l1_error(np.ones(3), np.ones(4), 1.0)


@given(st.lists(st.floats(-1e3, 1e3), min_size=2, max_size=12), st.floats(1e-3, 1.0))
def test_l1_is_a_symmetric_norm(values, vol):
    a = np.array(values)
    b = a[::-1].copy()
    assert l1_error(a, b, vol) == l1_error(b, a, vol) >= 0
    assert l1_error(a, a, vol) == 0


def test_restrict_methods():
    f = np.arange(6.0)
    assert restrict(f, 3).tolist() == [1.0, 4.0]                       # coincident centres
    assert restrict(f, 2, order=2).tolist() == [0.5, 2.5, 4.5]          # pair averages
    x = (np.arange(64) + 0.5) / 64
    fine = np.sin(2 * np.pi * x)
    xc = (np.arange(32) + 0.5) / 32
    assert np.max(np.abs(restrict(fine, 2, order=5) - np.sin(2 * np.pi * xc))) < 1e-9
    with pytest.raises(ValueError):
        restrict(f, 2, method="subsample")
    with pytest.raises(ShapeMismatch):
        restrict(np.arange(5.0), 2)


def test_restrict_2d_averages_blocks():
    f = np.arange(16.0).reshape(4, 4)
    assert restrict(f, 2).tolist() == [[2.5, 4.5], [10.5, 12.5]]


# ---------------------------------------------------------------------------
# contact diagnostics

def test_contact_width_examples():
    assert contact_width([1, 1, 1, 2, 2, 2], 1, 2) == 0
    ramp = [1.0] + [1 + (i + 0.5) / 10 for i in range(10)] + [2.0]
    assert contact_width(ramp, 1, 2) == 8
    assert contact_width(ramp[::-1], 2, 1) == 8
    with pytest.raises(NoTransitionFound):
        contact_width([1, 1, 1], 1, 2)


def test_plateau_overshoot():
    assert plateau_overshoot([1, 1, 2.1, 2], 1, 2) == pytest.approx(0.1)
    assert plateau_overshoot([1, 1.5, 2], 1, 2) == 0.0


def test_oscillation_excess():
    ref = np.array([1, 1, 1.5, 2, 2.0])
    assert oscillation_excess(np.array([1, 1, 1, 2, 2.0]), ref) == 0.0
    assert oscillation_excess(np.array([1, 1.2, 1.5, 2, 2.0]), ref) == 0.0
    assert oscillation_excess(np.array([1, 0.9, 1.5, 2.1, 2.0]), ref) == pytest.approx(0.4)
    with pytest.raises(ShapeMismatch):
        oscillation_excess(ref[:3], ref)
    with pytest.raises(NoTransitionFound):
        oscillation_excess(ref, np.ones(5))


# ---------------------------------------------------------------------------
# configuration and runs

def test_run_config_parsing(tmp_path):
    path = tmp_path / "run.cfg"
    path.write_text("# Lax tube\nproblem = lax\nscheme = aaad5\nnx = 50\n\n"
                    "c = 0.3  # override\nsnapshots = 0.1, 0.2\naccuracy_mode = yes\n")
    cfg = RunConfig.from_mapping(read_config_file(path))
    assert (cfg.problem, cfg.scheme, cfg.nx, cfg.c) == ("lax", "aaad5", 50, 0.3)
    assert cfg.snapshots == (0.1, 0.2) and cfg.accuracy_mode and cfg.order == 5


def test_run_config_validation(tmp_path):
    with pytest.raises(ValueError):
        RunConfig("lax", scheme="weno7")
    with pytest.raises(ValueError):
        RunConfig("lax", c=-1.0)
    with pytest.raises(ValueError):
        RunConfig.from_mapping({"problem": "lax", "colour": "red"})
    with pytest.raises(ValueError):
        RunConfig.from_mapping({"scheme": "cu2"})
    (tmp_path / "bad.cfg").write_text("problem lax\n")
    with pytest.raises(ValueError):
        read_config_file(tmp_path / "bad.cfg")


def test_default_c_and_dt_cap():
    spec = harness.build_problem("shock_bubble")
    assert RunConfig("shock_bubble").scheme_config(spec).c_constant == 0.15
    assert RunConfig("shock_bubble", scheme="aaad5").scheme_config(spec).c_constant == 0.05
    acc = harness.build_problem("accuracy_1d")
    assert RunConfig("accuracy_1d", scheme="aaad5", accuracy_mode=True).scheme_config(acc).dt_cap_k == 0.5
    assert RunConfig("accuracy_1d", scheme="aaad2", accuracy_mode=True).scheme_config(acc).dt_cap_k is None


def test_snapshot_stem():
    assert snapshot_stem(1.3) == "t1p300000"
    assert snapshot_stem(0.038) == "t0p038000"


def test_run_writes_summary_and_snapshots(tmp_path):
    cfg = RunConfig("lax", scheme="aaad2", nx=40, t_final_override=0.2, snapshots=(0.1,))
    res = run(cfg)
    assert res.out_dir == tmp_path / "runs" / "lax_aaad2_40"
    summary = json.loads((res.out_dir / "summary.json").read_text())
    assert summary["status"] == "ok" and summary["t"] == pytest.approx(0.2)
    assert sorted(p.name for p in res.out_dir.glob("*.csv")) == ["t0p100000.csv", "t0p200000.csv"]
    again = run(cfg, write=False)
    assert np.array_equal(again.state.field, res.state.field)           # deterministic


def test_run_records_exact_error_for_smooth_problem():
    res = run(RunConfig("accuracy_2d", scheme="aaad2", nx=20, t_final_override=0.05), write=False)
    spec = harness.build_problem("accuracy_2d")
    exact = spec.exact(*res.grid.centers(), res.state.t)[0]
    assert res.summary["l1_error_exact"] == l1_error(res.density, exact, res.grid.cell_volume) > 0


def test_run_failure_leaves_record(tmp_path):
    cfg = RunConfig("blast", scheme="aweno5", nx=100, stage_fallback=False)
    with pytest.raises(SolverError):
        run(cfg)
    record = json.loads((tmp_path / "runs" / "blast_aweno5_100" / "failure.json").read_text())
    assert record["status"] == "failed" and record["failure"]["stage"] in (1, 2, 3)


def test_run_against_reference_snapshot(tmp_path):
    fine = run(RunConfig("lax", scheme="cu2", nx=120, t_final_override=0.1, out_dir="fine"))
    ref = [p for p in fine.summary["outputs"]][-1]
    res = run(RunConfig("lax", scheme="cu2", nx=40, t_final_override=0.1, reference=ref),
              write=False)
    expected = l1_error(res.density, restrict(fine.density, 3), res.grid.cell_volume)
    assert res.summary["l1_error_reference"] == pytest.approx(expected) and expected > 0
