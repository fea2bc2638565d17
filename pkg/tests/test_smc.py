import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from pathtrack.errframe import ErrorRates, TrackingError
from pathtrack.errors import ConfigError, SingularityError
from pathtrack.planner import TrajectoryPoint
from pathtrack.smc import SmcParams, SmcState, reaching_rate, smc_control, surfaces, switch

TABLE = SmcParams()
ZERO_ERR = TrackingError(0.0, 0.0, 0.0)
ZERO_RATES = ErrorRates(0.0, 0.0, 0.0)


def ref(v_d=0.0, w_d=0.0, v_dot=0.0, w_dot=0.0):
    return TrajectoryPoint(0.0, 0.0, 0.0, 0.0, v_d, w_d, v_dot, w_dot)


def test_surface_examples():
    assert surfaces(ZERO_ERR, ZERO_RATES, TABLE) == (0.0, 0.0)
    s1, _ = surfaces(TrackingError(1.0, 0.0, 0.0), ZERO_RATES, TABLE)
    assert s1 == pytest.approx(0.22)
    _, s2 = surfaces(TrackingError(0.0, 1.0, 0.5), ZERO_RATES, TABLE)
    assert s2 == pytest.approx(3.275)


def test_reaching_rate_examples():
    assert reaching_rate(0.0, 0.048, 0.48) == 0.0
    assert reaching_rate(1.0, 0.048, 0.48) == pytest.approx(-0.528)
    assert reaching_rate(-1.0, 0.3, 3.7) == pytest.approx(4.0)


@given(st.floats(-10, 10), st.sampled_from(["sign", "saturation", "tanh"]), st.floats(0.01, 2))
def test_switch_is_odd_and_bounded(s, mode, width):
    assert switch(-s, mode, width) == -switch(s, mode, width)
    assert abs(switch(s, mode, width)) <= 1.0


def test_chatter_band_values():
    assert TABLE.chatter_band(0.1, 1) == pytest.approx(0.1 * 0.48 / (1 - 0.1 * 0.048))
    assert TABLE.chatter_band(0.1, 2) == pytest.approx(0.1 * 3.7 / (1 - 0.1 * 0.3))
    assert TABLE.chatter_band(0.1, 1) == pytest.approx(0.04823, abs=1e-5)


def test_equilibrium_returns_feedforward():
    cmd, st_, diag = smc_control(ZERO_ERR, ZERO_RATES, ref(v_d=1.5), SmcState(v_c=1.5), 1.5,
                                 TABLE, 0.1)
    assert diag["v_dot_c"] == 0.0
    assert diag["theta_dot_c"] == 0.0
    assert cmd == type(cmd)(1.5, 0.0)
    assert st_.v_c == 1.5


def test_single_step_speed_law():
    _, _, diag = smc_control(TrackingError(1.0, 0.0, 0.0), ZERO_RATES, ref(), SmcState(), 1.0,
                             TABLE, 0.1)
    assert diag["s1"] == pytest.approx(0.22)
    assert diag["v_dot_c"] == pytest.approx(-0.49056, abs=1e-12)


def test_denominator_at_zero_heading_error_is_k3():
    _, _, diag = smc_control(TrackingError(0.0, 1.0, 0.0), ZERO_RATES, ref(), SmcState(), 1.0,
                             TABLE, 0.1)
    assert diag["v_dot_c"] == 0.0
    assert diag["theta_dot_c"] == pytest.approx((-0.3 * 2.0 - 3.7) / 2.55)


def test_cos_denominator_variant():
    p = SmcParams(denominator="cos")
    _, _, diag = smc_control(TrackingError(0.0, 1.0, 0.0), ZERO_RATES, ref(), SmcState(), 1.0,
                             p, 0.1)
    assert diag["theta_dot_c"] == pytest.approx((-0.3 * 2.0 - 3.7) / (1.0 + 2.55))


def test_denominator_guard_preserves_sign():
    te = -1.0
    v_r = (2.55 - 0.01) / math.sin(-te)  # v_r sin(te) + k3 = +0.01
    err = TrackingError(0.0, 0.0, te)
    rates = ErrorRates(0.0, 0.0, 0.0)
    _, _, diag = smc_control(err, rates, ref(), SmcState(), v_r, TABLE, 0.1)
    s2 = TABLE.k3 * te
    v_dot_c = diag["v_dot_c"]
    expected = (reaching_rate(s2, TABLE.Q2, TABLE.P2) - v_dot_c * math.sin(te)) / 0.05
    assert diag["theta_dot_c"] == pytest.approx(expected)


@pytest.mark.parametrize("te", [math.pi / 2, -math.pi / 2, 2.0])
def test_speed_law_singularity(te):
    with pytest.raises(SingularityError):
        smc_control(TrackingError(0.0, 0.0, te), ZERO_RATES, ref(), SmcState(), 1.0, TABLE, 0.1)


def test_rejects_nonpositive_dt():
    with pytest.raises(ValueError):
        smc_control(ZERO_ERR, ZERO_RATES, ref(), SmcState(), 1.0, TABLE, 0.0)


small = st.floats(-0.5, 0.5)


@given(small, small, st.floats(-1.2, 1.2), small, small, small, st.floats(0, 3),
       st.floats(0, 3), small, small, small, st.sampled_from(["sign", "saturation", "tanh"]))
def test_odd_symmetry(xe, ye, te, xd, yd, td, v_r, v_d, w_d, v_dot, w_dot, mode):
    p = SmcParams(switch_mode=mode)
    a = smc_control(TrackingError(xe, ye, te), ErrorRates(xd, yd, td),
                    ref(v_d, w_d, v_dot, w_dot), SmcState(), v_r, p, 0.1)[2]
    b = smc_control(TrackingError(-xe, -ye, -te), ErrorRates(-xd, -yd, -td),
                    ref(-v_d, w_d, -v_dot, w_dot), SmcState(), -v_r, p, 0.1)[2]
    assert b["s1"] == -a["s1"]
    assert b["s2"] == -a["s2"]
    assert b["v_dot_c"] == pytest.approx(-a["v_dot_c"], abs=1e-12)


@pytest.mark.parametrize("kwargs", [
    {"k1": 0.0}, {"P1": -1.0}, {"switch_mode": "relay"}, {"denominator": "tan"},
    {"switch_mode": "tanh", "width": 0.0}, {"den_guard": 0.0},
])
def test_params_validation(kwargs):
    with pytest.raises(ConfigError):
        SmcParams(**kwargs)
