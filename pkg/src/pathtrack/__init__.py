"""Path-following controllers for a kinematic bicycle model.

A Lyapunov-based law and a sliding-mode law track a time-parametrised
reference built from waypoints; :func:`pathtrack.sim.run` closes the loop.
"""

from .errframe import ErrorRates, TrackingError, compute_error, error_rates
from .errors import ConfigError, SingularityError
from .lyapunov import LyapGains, LyapunovController, lyap_control, lyapunov_value
from .planner import PlannerConfig, TrajectoryPoint, Waypoint, plan_path, plan_segment
from .sim import RunMetrics, RunTrace, ScenarioConfig, compute_metrics, run
from .smc import SlidingModeController, SmcParams, smc_control
from .vehicle import ControlCommand, NoiseSpec, VehicleParams, VehicleState, step

__version__ = "0.1.0"

__all__ = [
    "ConfigError", "SingularityError",
    "VehicleState", "VehicleParams", "NoiseSpec", "ControlCommand", "step",
    "TrackingError", "ErrorRates", "compute_error", "error_rates",
    "LyapGains", "LyapunovController", "lyap_control", "lyapunov_value",
    "SmcParams", "SlidingModeController", "smc_control",
    "Waypoint", "TrajectoryPoint", "PlannerConfig", "plan_path", "plan_segment",
    "ScenarioConfig", "RunTrace", "RunMetrics", "run", "compute_metrics",
]
