import pytest

from pathtrack.config import bundled_path, bundled_scenario, echo, load_scenario
from pathtrack.errors import ConfigError


def test_bundled_scenario_loads():
    cfg, wp = load_scenario(bundled_scenario())
    assert wp == bundled_path("paper_like")
    assert cfg.controller == "lyapunov"
    assert (cfg.smc.P1, cfg.smc.Q1, cfg.smc.P2, cfg.smc.Q2) == (0.48, 0.048, 3.7, 0.3)
    assert (cfg.lyap.k1, cfg.lyap.k2, cfg.lyap.k3) == (0.9, 1.1, 3.0)
    assert "smc.switch_mode = 'sign'" in echo(cfg, wp)


def test_overrides_and_relative_waypoints(tmp_path):
    (tmp_path / "w.txt").write_text("0,0\n0,10\n")
    ini = tmp_path / "s.ini"
    ini.write_text("[scenario]\nwaypoints = w.txt\ninitial_offset = 0.1, 0.2, 0.3\n"
                   "duration_cap =\n[noise]\nseed = 3\n")
    cfg, wp = load_scenario(ini, {"controller": "smc", "noise.seed": 9,
                                  "smc.switch_mode": "tanh", "error_model": None})
    assert wp == tmp_path / "w.txt"
    assert cfg.controller == "smc" and cfg.noise.seed == 9 and cfg.smc.switch_mode == "tanh"
    assert cfg.initial_offset == (0.1, 0.2, 0.3)
    assert cfg.duration_cap is None


@pytest.mark.parametrize("text, match", [
    ("[scenario]\nwaypoints = missing.txt\n", "missing.txt"),
    ("[scenario]\nwaypoints = nosuchpath\n", "nosuchpath"),
    ("[bogus]\na = 1\n", "unknown section"),
    ("[smc]\nP9 = 1\n", "unknown key"),
    ("[scenario]\nspeed = 1\n", "unknown key"),
    ("[smc]\nP1 = fast\n", "cannot parse"),
    ("[scenario]\ninitial_offset = 1, 2\n", "three values"),
    ("[lyapunov]\nk1 = -0.9\n", "gains"),
    ("not an ini", "s.ini"),
])
def test_config_errors(tmp_path, text, match):
    ini = tmp_path / "s.ini"
    ini.write_text(text)
    with pytest.raises(ConfigError, match=match):
        load_scenario(ini)


def test_missing_config_file(tmp_path):
    with pytest.raises(ConfigError, match="nope.ini"):
        load_scenario(tmp_path / "nope.ini")
