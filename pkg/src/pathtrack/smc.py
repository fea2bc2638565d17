"""Sliding-mode tracking law.

Surfaces ``s1 = xe' + k1 xe`` and ``s2 = ye' + k2 ye + k3 theta_e`` are driven
by the reaching law ``s' = -Q s - P sw(s)``.  The speed channel produces an
acceleration that is integrated into the speed command; the steering channel
produces a heading rate that is turned into a steering angle.
"""

import math
from dataclasses import dataclass, replace

from .errors import ConfigError, SingularityError
from .lyapunov import V_FLOOR, omega_to_steering
from .vehicle import ControlCommand

SWITCH_MODES = ("sign", "saturation", "tanh")
DENOMINATORS = ("sin", "cos")

# shared implementation with the Lyapunov controller
steering_from_rate = omega_to_steering


@dataclass(frozen=True)
class SmcParams:
    k1: float = 0.22
    k2: float = 2.0
    k3: float = 2.55
    P1: float = 0.48
    Q1: float = 0.048
    P2: float = 3.7
    Q2: float = 0.3
    switch_mode: str = "sign"
    width: float = 0.5
    denominator: str = "sin"
    den_guard: float = 0.05

    def __post_init__(self):
        if not (self.k1 > 0 and self.k2 > 0 and self.k3 > 0):
            raise ConfigError("surface gains k1, k2, k3 must be > 0")
        if min(self.P1, self.Q1, self.P2, self.Q2) < 0:
            raise ConfigError("reaching-law gains P, Q must be >= 0")
        if self.switch_mode not in SWITCH_MODES:
            raise ConfigError(f"switch_mode must be one of {SWITCH_MODES}, got {self.switch_mode!r}")
        if self.switch_mode != "sign" and not self.width > 0:
            raise ConfigError("switching width must be > 0")
        if self.denominator not in DENOMINATORS:
            raise ConfigError(f"denominator must be one of {DENOMINATORS}, got {self.denominator!r}")
        if not self.den_guard > 0:
            raise ConfigError("den_guard must be > 0")

    def chatter_band(self, ts, channel):
        """Width of the quasi-sliding band a sign-switched channel settles into."""
        P, Q = (self.P1, self.Q1) if channel == 1 else (self.P2, self.Q2)
        return ts * P / (1.0 - ts * Q)


@dataclass(frozen=True)
class SmcState:
    v_c: float = 0.0
    s1: float = float("nan")
    s2: float = float("nan")


def switch(s, mode="sign", width=1.0):
    if mode == "sign":
        return 1.0 if s > 0 else (-1.0 if s < 0 else 0.0)
    if mode == "saturation":
        return min(max(s / width, -1.0), 1.0)
    if mode == "tanh":
        return math.tanh(s / width)
    raise ValueError(f"unknown switch mode {mode!r}")


def surfaces(err, rates, p):
    s1 = rates.xe_dot + p.k1 * err.xe
    s2 = rates.ye_dot + p.k2 * err.ye + p.k3 * err.theta_e
    return s1, s2


def reaching_rate(s, Q, P, mode="sign", width=1.0):
    return -Q * s - P * switch(s, mode, width)


def smc_control(err, rates, ref, state, v_r, p, dt, l=2.5, phi_max=0.5236,
                v_max=math.inf, v_floor=V_FLOOR):
    """One controller update.

    ``ref`` supplies ``v_d, omega_d, v_dot_d, omega_dot_d``; ``v_r`` is the
    measured plant speed.  Returns ``(command, new_state, diagnostics)``.
    """
    if not dt > 0:
        raise ValueError(f"dt must be > 0, got {dt}")
    te = err.theta_e
    if not abs(te) < math.pi / 2:
        raise SingularityError(f"|theta_e| = {abs(te):.4f} >= pi/2, speed law undefined")
    s1, s2 = surfaces(err, rates, p)
    sin_te, cos_te = math.sin(te), math.cos(te)

    v_dot_c = (-v_r * rates.theta_e_dot * sin_te
               - rates.ye_dot * ref.omega_d
               - err.ye * ref.omega_dot_d
               + ref.v_dot_d
               - p.k1 * rates.xe_dot
               + reaching_rate(s1, p.Q1, p.P1, p.switch_mode, p.width)) / cos_te
    v_c = min(max(state.v_c + v_dot_c * dt, 0.0), v_max)

    trig = sin_te if p.denominator == "sin" else cos_te
    den = v_r * trig + p.k3
    if abs(den) < p.den_guard:
        den = math.copysign(p.den_guard, den)
    theta_dot_c = ref.omega_d + (reaching_rate(s2, p.Q2, p.P2, p.switch_mode, p.width)
                                 - p.k2 * rates.ye_dot
                                 + ref.omega_dot_d * err.xe
                                 + ref.omega_d * rates.xe_dot
                                 - v_dot_c * sin_te) / den
    phi_c = steering_from_rate(theta_dot_c, v_r, l, phi_max, v_floor)

    values = (s1, s2, v_dot_c, v_c, theta_dot_c, phi_c)
    if not all(math.isfinite(x) for x in values):
        raise SingularityError(f"non-finite sliding-mode quantity in {values}")
    diag = {"s1": s1, "s2": s2, "v_dot_c": v_dot_c, "theta_dot_c": theta_dot_c}
    return ControlCommand(v_c, phi_c), replace(state, v_c=v_c, s1=s1, s2=s2), diag


class SlidingModeController:
    kind = "smc"

    def __init__(self, params, vehicle, v_init=0.0, v_max=math.inf, v_floor=V_FLOOR):
        self.params = params
        self.vehicle = vehicle
        self.v_max = v_max
        self.v_floor = v_floor
        self.state = SmcState(v_c=v_init)

    def __call__(self, err, rates, ref, state, dt):
        cmd, self.state, diag = smc_control(
            err, rates, ref, self.state, state.v, self.params, dt,
            self.vehicle.wheelbase_l, self.vehicle.phi_max, self.v_max, self.v_floor)
        return cmd, diag
