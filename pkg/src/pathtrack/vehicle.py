"""Kinematic bicycle model of the tracked car.

Axis convention: heading ``theta`` is measured from the +y axis, so
``x' = v sin(theta)`` and ``y' = v cos(theta)``.  Every module in the
package uses this convention consistently.
"""

import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import ConfigError

__all__ = [
    "VehicleState",
    "VehicleParams",
    "NoiseSpec",
    "ControlCommand",
    "wrap_angle",
    "arc_step",
    "arc_advance",
    "kinematics_deriv",
    "filter_step",
    "step",
    "apply_noise",
]


def wrap_angle(a):
    """Wrap an angle to (-pi, pi]."""
    w = math.remainder(a, 2.0 * math.pi)
    if w <= -math.pi:
        w += 2.0 * math.pi
    return w


@dataclass(frozen=True)
class VehicleState:
    x: float = 0.0
    y: float = 0.0
    theta: float = 0.0
    v: float = 0.0
    phi: float = 0.0

    @property
    def pose(self):
        return (self.x, self.y, self.theta)


@dataclass(frozen=True)
class ControlCommand:
    v: float
    phi: float


@dataclass(frozen=True)
class VehicleParams:
    wheelbase_l: float = 2.5
    phi_max: float = 0.5236
    v_filter_tau: float = 0.05
    phi_filter_tau: float = 0.05
    v_max: float = 4.0

    def __post_init__(self):
        if not self.v_max > 0:
            raise ConfigError(f"v_max must be > 0, got {self.v_max}")
        if not self.wheelbase_l > 0:
            raise ConfigError(f"wheelbase_l must be > 0, got {self.wheelbase_l}")
        if not 0 < self.phi_max < math.pi / 2:
            raise ConfigError(f"phi_max must lie in (0, pi/2), got {self.phi_max}")
        if self.v_filter_tau < 0 or self.phi_filter_tau < 0:
            raise ConfigError("filter time constants must be >= 0")

    def yaw_rate(self, v, phi):
        return v / self.wheelbase_l * math.tan(phi)


@dataclass(frozen=True)
class NoiseSpec:
    """Gaussian noise magnitudes.

    ``sigma_pose`` and ``sigma_theta`` perturb what the controller sees;
    ``sigma_actuation`` is a fraction of each applied command.
    """

    sigma_pose: float = 0.01
    sigma_theta: float = 0.005
    sigma_actuation: float = 0.01
    seed: int = 0

    def __post_init__(self):
        if min(self.sigma_pose, self.sigma_theta, self.sigma_actuation) < 0:
            raise ConfigError("noise standard deviations must be >= 0")

    @property
    def silent(self):
        return self.sigma_pose == 0 and self.sigma_theta == 0 and self.sigma_actuation == 0


def arc_step(pose, length, dtheta):
    """Pose after travelling ``length`` while the heading turns by ``dtheta``."""
    x, y, th = pose
    half = 0.5 * dtheta
    # chord form: stable for any turn, including values near zero
    chord = length * (math.sin(half) / half if abs(half) > 1e-8 else 1.0 - half * half / 6.0)
    mid = th + half
    return (x + chord * math.sin(mid), y + chord * math.cos(mid), th + dtheta)


def arc_advance(pose, length, curvature):
    """Pose after travelling ``length`` along a constant-curvature arc."""
    return arc_step(pose, length, curvature * length)


def kinematics_deriv(state, params):
    """Return ``(x', y', theta')`` for the bicycle model."""
    if not abs(state.phi) < math.pi / 2:
        raise ValueError(f"steering angle {state.phi} at the tangent singularity")
    v, th = state.v, state.theta
    return (v * math.sin(th), v * math.cos(th), v / params.wheelbase_l * math.tan(state.phi))


def filter_step(prev_output, input, tau, dt):
    """Exact discretisation of a first-order lag over ``dt``; ``tau=0`` passes through."""
    if tau == 0:
        return input
    return input + (prev_output - input) * math.exp(-dt / tau)


def step(state, cmd, dt, params):
    """Advance one fixed RK4 step with the command held over ``dt``.

    The actuator lags are applied first, then the pose is integrated with the
    filtered speed and steering held constant across the step.
    """
    if not dt > 0:
        raise ValueError(f"dt must be > 0, got {dt}")
    v = filter_step(state.v, cmd.v, params.v_filter_tau, dt)
    phi = filter_step(state.phi, cmd.phi, params.phi_filter_tau, dt)
    phi = min(max(phi, -params.phi_max), params.phi_max)

    s = replace(state, v=v, phi=phi)
    k1 = kinematics_deriv(s, params)
    k2 = kinematics_deriv(replace(s, theta=s.theta + 0.5 * dt * k1[2]), params)
    k3 = kinematics_deriv(replace(s, theta=s.theta + 0.5 * dt * k2[2]), params)
    k4 = kinematics_deriv(replace(s, theta=s.theta + dt * k3[2]), params)
    # x, y, theta derivatives only depend on theta, so the stage states only need theta.
    x = s.x + dt / 6.0 * (k1[0] + 2 * k2[0] + 2 * k3[0] + k4[0])
    y = s.y + dt / 6.0 * (k1[1] + 2 * k2[1] + 2 * k3[1] + k4[1])
    th = s.theta + dt / 6.0 * (k1[2] + 2 * k2[2] + 2 * k3[2] + k4[2])
    return VehicleState(x, y, wrap_angle(th), v, phi)


def apply_noise(value, spec, rng):
    """Return a copy of ``value`` with additive zero-mean Gaussian noise.

    ``VehicleState`` gets sensor noise on x, y and theta; ``ControlCommand``
    gets actuation noise scaled by the magnitude of each field.  Draws are
    taken even for zero sigmas so the stream position does not depend on
    which sigmas are active.
    """
    if isinstance(value, VehicleState):
        n = rng.standard_normal(3).tolist()
        x, y, th = value.x, value.y, value.theta
        if spec.sigma_pose > 0:
            x += spec.sigma_pose * n[0]
            y += spec.sigma_pose * n[1]
        if spec.sigma_theta > 0:
            th = wrap_angle(th + spec.sigma_theta * n[2])
        return replace(value, x=x, y=y, theta=th)
    if isinstance(value, ControlCommand):
        n = rng.standard_normal(2).tolist()
        if spec.sigma_actuation == 0:
            return value
        sa = spec.sigma_actuation
        return ControlCommand(value.v + sa * abs(value.v) * n[0],
                              value.phi + sa * abs(value.phi) * n[1])
    raise TypeError(f"cannot perturb {type(value).__name__}")


def noise_rng(seed, name=""):
    """Generator keyed by ``(seed, name)`` so batch runs are order independent."""
    key = [int(seed) & 0xFFFFFFFF] + [b for b in name.encode("utf-8")]
    return np.random.default_rng(np.random.SeedSequence(key))
