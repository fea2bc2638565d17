import math

import numpy as np
import pytest

from pathtrack.errors import ConfigError, SingularityError
from pathtrack.planner import Waypoint
from pathtrack.sim import (RunTrace, ScenarioConfig, compute_metrics, rate_residuals, run,
                           total_variation, trace_columns)
from pathtrack.vehicle import NoiseSpec, VehicleParams

from conftest import IDEAL, QUIET

STRAIGHT = [Waypoint(0, 0), Waypoint(0, 20)]


def test_straight_path_feedforward_exact():
    _, m = run(ScenarioConfig(STRAIGHT, noise=QUIET))
    assert m.max_abs_ye <= 1e-3
    assert m.completed


def test_lateral_offset_decays():
    tr, _ = run(ScenarioConfig(STRAIGHT, noise=QUIET, initial_offset=(0.5, 0.0, 0.0)))
    ye = np.abs(tr["ye"])
    assert ye[0] == pytest.approx(0.5)
    cross = int(np.argmax(tr["ye"] <= 0))
    assert cross > 0
    assert np.all(np.diff(ye[:cross]) <= 1e-12)
    assert ye[cross:].max() <= 0.05 * 0.5
    assert ye[-1] <= 0.01


def test_zero_noise_lyapunov_tracks_bundled_path(course_waypoints):
    _, m = run(ScenarioConfig(course_waypoints, noise=QUIET, vehicle=IDEAL))
    assert max(m.max_abs_xe, m.max_abs_ye, m.max_abs_thetae) <= 1e-3


def test_same_seed_is_bit_identical(course_waypoints):
    cfg = ScenarioConfig(course_waypoints, "smc", noise=NoiseSpec(seed=11), duration_cap=20.0)
    a, _ = run(cfg)
    b, _ = run(cfg)
    for c in a.columns:
        assert np.array_equal(a[c], b[c])


def test_different_seed_changes_noisy_run(course_waypoints):
    a, _ = run(ScenarioConfig(course_waypoints, noise=NoiseSpec(seed=1), duration_cap=10.0))
    b, _ = run(ScenarioConfig(course_waypoints, noise=NoiseSpec(seed=2), duration_cap=10.0))
    assert not np.array_equal(a["phi_cmd"], b["phi_cmd"])


@pytest.mark.parametrize("controller", ["lyapunov", "smc"])
def test_quiet_runs_ignore_seed(course_waypoints, controller):
    a, _ = run(ScenarioConfig(course_waypoints, controller, noise=NoiseSpec(0, 0, 0, seed=1),
                              duration_cap=30.0, initial_offset=(0.2, 0.1, 0.05)))
    b, _ = run(ScenarioConfig(course_waypoints, controller, noise=NoiseSpec(0, 0, 0, seed=99),
                              duration_cap=30.0, initial_offset=(0.2, 0.1, 0.05)))
    for c in a.columns:
        assert np.array_equal(a[c], b[c])


def test_trace_shape_and_columns(course_waypoints):
    tr, m = run(ScenarioConfig(course_waypoints, "smc", duration_cap=5.0))
    assert len(tr) == 51
    assert not m.completed
    assert set(tr.data) == set(trace_columns("smc"))
    assert np.allclose(np.diff(tr["t"]), 0.1)
    assert trace_columns("lyapunov")[-1] == "V" and "s1" not in trace_columns("lyapunov")


def test_zero_order_hold_one_command_per_sample(course_waypoints):
    calls = []

    class Spy:
        def __init__(self, inner):
            self.inner = inner

        def __call__(self, *a):
            calls.append(a[2].t)
            return self.inner(*a)

    import pathtrack.sim as sim
    orig = sim.make_controller
    sim.make_controller = lambda cfg: Spy(orig(cfg))
    try:
        tr, _ = run(ScenarioConfig(course_waypoints, duration_cap=3.0))
    finally:
        sim.make_controller = orig
    assert calls == list(tr["t"])


def test_singularity_reports_step(course_waypoints):
    cfg = ScenarioConfig(course_waypoints, "smc", noise=QUIET, initial_offset=(0, 0, 1.7))
    with pytest.raises(SingularityError) as exc:
        run(cfg)
    assert exc.value.step == 0
    assert str(exc.value).startswith("step 0:")


def test_both_controllers_complete_with_nominal_noise(course_waypoints):
    for c in ("lyapunov", "smc"):
        _, m = run(ScenarioConfig(course_waypoints, c))
        assert m.completed


def _trace(**cols):
    n = len(next(iter(cols.values())))
    data = {c: np.zeros(n) for c in trace_columns("lyapunov")}
    data.update({k: np.asarray(v, dtype=float) for k, v in cols.items()})
    return RunTrace("lyapunov", 0.1, data)


def test_metrics_examples():
    m = compute_metrics(_trace(ye=[0.0, 0.05, 0.0]))
    assert m.max_abs_ye == 0.05
    assert m.rms_ye == pytest.approx(0.05 * math.sqrt(1 / 3))
    assert m.max_abs_xe == m.rms_xe == m.max_abs_thetae == 0.0
    assert compute_metrics(_trace(phi_cmd=[0.0, 0.1, -0.1])).steering_tv == pytest.approx(0.3)
    assert total_variation([1.0]) == 0.0


def test_metrics_reject_empty_trace():
    with pytest.raises(ValueError):
        compute_metrics(_trace(ye=[]))


def test_max_dominates_rms(course_waypoints):
    _, m = run(ScenarioConfig(course_waypoints, "smc", duration_cap=30.0))
    for k in ("xe", "ye", "thetae"):
        assert getattr(m, f"max_abs_{k}") >= getattr(m, f"rms_{k}") >= 0


def test_rate_residual_small_on_derived_trace(course_waypoints):
    tr, _ = run(ScenarioConfig(course_waypoints, noise=QUIET, initial_offset=(0.5, 0.5, 0.1),
                               duration_cap=30.0))
    assert rate_residuals(tr, VehicleParams()).max() <= 1e-2


@pytest.mark.parametrize("kwargs", [
    {"controller": "pid"}, {"error_model": "x"}, {"substeps": 0},
    {"initial_offset": (1, 2)}, {"duration_cap": 0.0}, {"waypoints": [Waypoint(0, 0)]},
])
def test_scenario_validation(kwargs):
    base = {"waypoints": STRAIGHT}
    base.update(kwargs)
    with pytest.raises(ConfigError):
        ScenarioConfig(**base)
