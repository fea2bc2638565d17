"""Lyapunov-based tracking law.

    v_r = v_d cos(theta_e) - k1 xe
    w_r = w_d - k2 v_d sinc(theta_e) ye - k3 theta_e

with the candidate function V = (xe^2 + ye^2 + theta_e^2) / 2.
"""

import math
from dataclasses import dataclass

from .errors import ConfigError
from .vehicle import ControlCommand

V_FLOOR = 0.1


@dataclass(frozen=True)
class LyapGains:
    k1: float = 0.9
    k2: float = 1.1
    k3: float = 3.0

    def __post_init__(self):
        if not (self.k1 > 0 and self.k2 > 0 and self.k3 > 0):
            raise ConfigError(f"Lyapunov gains must all be > 0, got {self}")


def sinc(theta):
    """sin(theta)/theta with sinc(0) == 1."""
    if abs(theta) < 1e-4:
        return 1.0 - theta * theta / 6.0
    return math.sin(theta) / theta


def lyap_control(err, v_d, omega_d, gains):
    v_r = v_d * math.cos(err.theta_e) - gains.k1 * err.xe
    omega_r = omega_d - gains.k2 * v_d * sinc(err.theta_e) * err.ye - gains.k3 * err.theta_e
    return v_r, omega_r


def lyapunov_value(err):
    return 0.5 * (err.xe ** 2 + err.ye ** 2 + err.theta_e ** 2)


def omega_to_steering(omega_cmd, v_r, l, phi_max=0.5236, v_floor=V_FLOOR):
    """Steering angle that produces yaw rate ``omega_cmd`` at speed ``v_r``.

    The speed is floored at ``v_floor`` so the map stays finite near standstill,
    and the result is clamped to the mechanical limit.
    """
    phi = math.atan(l * omega_cmd / max(v_r, v_floor))
    return min(max(phi, -phi_max), phi_max)


class LyapunovController:
    """Closed-loop wrapper: tracking errors in, plant command out."""

    kind = "lyapunov"

    def __init__(self, gains, vehicle, v_floor=V_FLOOR):
        self.gains = gains
        self.vehicle = vehicle
        self.v_floor = v_floor

    def __call__(self, err, rates, ref, state, dt):
        v_r, omega_r = lyap_control(err, ref.v_d, ref.omega_d, self.gains)
        phi = omega_to_steering(omega_r, v_r, self.vehicle.wheelbase_l,
                                self.vehicle.phi_max, self.v_floor)
        return ControlCommand(v_r, phi), {"omega_cmd": omega_r}
