"""Closed-loop simulation of a tracking controller against a planned path.

Every ``Ts`` the controller reads a (noisy) copy of the plant state, forms
the tracking error against the k-th trajectory point, and emits a command
that is held over the interval while the plant is sub-stepped.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from . import errframe
from .errors import ConfigError, SingularityError
from .lyapunov import V_FLOOR, LyapGains, LyapunovController, lyapunov_value
from .planner import PlannerConfig, plan_path
from .smc import SlidingModeController, SmcParams
from .vehicle import (ControlCommand, NoiseSpec, VehicleParams, VehicleState, apply_noise,
                      noise_rng, step, wrap_angle)

CONTROLLERS = ("lyapunov", "smc")
BASE_COLUMNS = ("t", "xd", "yd", "thetad", "vd", "omegad", "x", "y", "theta",
                "xe", "ye", "thetae", "v_cmd", "phi_cmd")


def trace_columns(controller):
    if controller == "smc":
        return BASE_COLUMNS + ("s1", "s2", "V")
    return BASE_COLUMNS + ("V",)


@dataclass
class ScenarioConfig:
    waypoints: list
    controller: str = "lyapunov"
    name: str = "scenario"
    lyap: LyapGains = field(default_factory=LyapGains)
    smc: SmcParams = field(default_factory=SmcParams)
    vehicle: VehicleParams = field(default_factory=VehicleParams)
    noise: NoiseSpec = field(default_factory=NoiseSpec)
    planner: PlannerConfig = field(default_factory=PlannerConfig)
    initial_offset: tuple = (0.0, 0.0, 0.0)
    initial_speed: float = 0.0
    duration_cap: float | None = None
    error_model: str = errframe.DERIVED
    substeps: int = 10
    forward_only: bool = True
    v_floor: float = V_FLOOR

    def __post_init__(self):
        if self.controller not in CONTROLLERS:
            raise ConfigError(f"controller must be one of {CONTROLLERS}, got {self.controller!r}")
        if self.error_model not in errframe.ERROR_MODELS:
            raise ConfigError(f"error_model must be one of {errframe.ERROR_MODELS}")
        if len(self.waypoints) < 2:
            raise ConfigError("scenario needs at least two waypoints")
        if int(self.substeps) < 1:
            raise ConfigError("substeps must be >= 1")
        if len(self.initial_offset) != 3:
            raise ConfigError("initial_offset is (dx, dy, dtheta)")
        if self.duration_cap is not None and not self.duration_cap > 0:
            raise ConfigError("duration_cap must be > 0")
        if not self.v_floor > 0:
            raise ConfigError("v_floor must be > 0")


@dataclass
class RunTrace:
    """Per-step record of a run.  ``data`` maps column name to a float array."""

    controller: str
    Ts: float
    data: dict
    plan_length: int = 0
    states: list = field(default_factory=list, repr=False)
    plan: list = field(default_factory=list, repr=False)

    def __len__(self):
        return len(self.data["t"])

    def __getitem__(self, key):
        return self.data[key]

    @property
    def columns(self):
        return trace_columns(self.controller)


@dataclass(frozen=True)
class RunMetrics:
    max_abs_xe: float
    rms_xe: float
    max_abs_ye: float
    rms_ye: float
    max_abs_thetae: float
    rms_thetae: float
    steering_tv: float
    speed_tv: float
    completed: bool

    def as_dict(self):
        return dict(self.__dict__)


def total_variation(u):
    u = np.asarray(u, dtype=float)
    return float(np.abs(np.diff(u)).sum()) if u.size > 1 else 0.0


def compute_metrics(trace):
    n = len(trace)
    if n == 0:
        raise ValueError("cannot summarise an empty trace")

    def mx(c):
        return float(np.max(np.abs(trace[c])))

    def rms(c):
        a = np.asarray(trace[c], dtype=float)
        return float(np.sqrt(np.mean(a * a)))

    return RunMetrics(
        mx("xe"), rms("xe"), mx("ye"), rms("ye"), mx("thetae"), rms("thetae"),
        total_variation(trace["phi_cmd"]), total_variation(trace["v_cmd"]),
        completed=(trace.plan_length == 0 or n == trace.plan_length),
    )


def make_controller(cfg):
    if cfg.controller == "lyapunov":
        return LyapunovController(cfg.lyap, cfg.vehicle, cfg.v_floor)
    return SlidingModeController(cfg.smc, cfg.vehicle, v_init=cfg.initial_speed,
                                 v_max=cfg.vehicle.v_max, v_floor=cfg.v_floor)


def initial_state(cfg, first):
    dx, dy, dth = cfg.initial_offset
    return VehicleState(first.x + dx, first.y + dy, wrap_angle(first.theta_d + dth),
                        v=cfg.initial_speed, phi=0.0)


def run(cfg, plan=None):
    """Simulate ``cfg`` and return ``(RunTrace, RunMetrics)``."""
    if plan is None:
        plan = plan_path(cfg.waypoints, cfg.planner)
    ts = cfg.planner.Ts
    steps = len(plan)
    if cfg.duration_cap is not None:
        steps = min(steps, int(math.floor(cfg.duration_cap / ts + 1e-9)) + 1)

    rng = noise_rng(cfg.noise.seed, cfg.name)
    controller = make_controller(cfg)
    vp = cfg.vehicle
    h = ts / cfg.substeps
    cols = trace_columns(cfg.controller)
    rows = np.empty((steps, len(cols)))
    state = initial_state(cfg, plan[0])
    states = []

    for k in range(steps):
        ref = plan[k]
        seen = apply_noise(state, cfg.noise, rng)
        err = errframe.compute_error(seen.pose, ref.pose, cfg.error_model)
        omega_r = vp.yaw_rate(state.v, state.phi)
        rates = errframe.error_rates(err, state.v, omega_r, ref.v_d, ref.omega_d, cfg.error_model)
        try:
            cmd, diag = controller(err, rates, ref, seen, ts)
        except SingularityError as exc:
            exc.step = k
            raise
        true_err = errframe.compute_error(state.pose, ref.pose, cfg.error_model)
        row = [ref.t, ref.x, ref.y, ref.theta_d, ref.v_d, ref.omega_d,
               state.x, state.y, state.theta,
               true_err.xe, true_err.ye, true_err.theta_e, cmd.v, cmd.phi]
        if cfg.controller == "smc":
            row += [diag["s1"], diag["s2"]]
        row.append(lyapunov_value(true_err))
        rows[k] = row
        states.append(state)

        applied = apply_noise(cmd, cfg.noise, rng)
        v = max(applied.v, 0.0) if cfg.forward_only else applied.v
        phi = min(max(applied.phi, -vp.phi_max), vp.phi_max)
        applied = ControlCommand(v, phi)
        for _ in range(cfg.substeps):
            state = step(state, applied, h, vp)
        if not all(math.isfinite(c) for c in (state.x, state.y, state.theta)):
            raise SingularityError("plant state became non-finite", step=k)

    data = {c: rows[:, i].copy() for i, c in enumerate(cols)}
    trace = RunTrace(cfg.controller, ts, data, plan_length=len(plan), states=states, plan=plan)
    return trace, compute_metrics(trace)


def rate_residuals(trace, vehicle, model=errframe.DERIVED, h=1e-4):
    """Max |finite-difference rate - model rate| per error channel along a trace.

    Uses the true plant states and reference points stored in ``trace``.
    """
    worst = np.zeros(3)
    for state, ref in zip(trace.states, trace.plan):
        w = vehicle.yaw_rate(state.v, state.phi)
        err = errframe.compute_error(state.pose, ref.pose, model)
        model_rates = errframe.error_rates(err, state.v, w, ref.v_d, ref.omega_d, model)
        fd = errframe.finite_difference_rates(state.pose, state.v, w, ref.pose, ref.v_d,
                                              ref.omega_d, h, model)
        diff = np.abs([fd.xe_dot - model_rates.xe_dot, fd.ye_dot - model_rates.ye_dot,
                       fd.theta_e_dot - model_rates.theta_e_dot])
        worst = np.maximum(worst, diff)
    return worst
