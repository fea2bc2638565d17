"""Tracking error between the car and the moving reference, and its dynamics.

Two error models are available:

``derived`` (default)
    Pose difference rotated into the frame of the *desired* pose, written for
    the ``x' = v sin(theta)`` axis convention, with ``theta_e = theta_r - theta_d``.
    Its exact time derivative is::

        xe' = v_r*cos(theta_e) + w_d*ye - v_d
        ye' = v_r*sin(theta_e) - w_d*xe
        theta_e' = w_r - w_d

``literal``
    A rotation written for the usual ``x' = v cos(theta)`` convention with
    ``theta_e = theta_d - theta_r``, paired with the rate set::

        xe' = v_r + w_r*ye - v_d*cos(theta_e)
        ye' = -w_r*xe + v_d*cos(theta_e)
        theta_e' = w_r - w_d

    These rates are not the derivative of that transform; the mode exists so
    the mismatch can be measured.
"""

import math
from dataclasses import dataclass

from .vehicle import arc_step, wrap_angle

DERIVED = "derived"
LITERAL = "literal"
ERROR_MODELS = (DERIVED, LITERAL)


@dataclass(frozen=True)
class TrackingError:
    xe: float
    ye: float
    theta_e: float


@dataclass(frozen=True)
class ErrorRates:
    xe_dot: float
    ye_dot: float
    theta_e_dot: float


def _check_model(model):
    if model not in ERROR_MODELS:
        raise ValueError(f"unknown error model {model!r}; expected one of {ERROR_MODELS}")


def compute_error(real, desired, model=DERIVED):
    """Error of pose ``real`` relative to pose ``desired``; poses are (x, y, theta)."""
    _check_model(model)
    xr, yr, tr = real
    xd, yd, td = desired
    dx, dy = xr - xd, yr - yd
    if model == LITERAL:
        c, s = math.cos(td), math.sin(td)
        return TrackingError(c * dx + s * dy, -s * dx + c * dy, wrap_angle(td - tr))
    c, s = math.cos(td), math.sin(td)
    return TrackingError(s * dx + c * dy, c * dx - s * dy, wrap_angle(tr - td))


def error_rates(err, v_r, omega_r, v_d, omega_d, model=DERIVED):
    _check_model(model)
    c = math.cos(err.theta_e)
    if model == LITERAL:
        return ErrorRates(v_r + omega_r * err.ye - v_d * c,
                          -omega_r * err.xe + v_d * c,
                          omega_r - omega_d)
    return ErrorRates(v_r * c + omega_d * err.ye - v_d,
                      v_r * math.sin(err.theta_e) - omega_d * err.xe,
                      omega_r - omega_d)


def _advance(pose, v, omega, h):
    # exact constant-(v, omega) motion in the x' = v sin(theta) convention
    return arc_step(pose, v * h, omega * h)


def finite_difference_rates(real, v_r, omega_r, desired, v_d, omega_d, h=1e-4, model=DERIVED):
    """Forward-difference estimate of the error rates over a horizon ``h``.

    Both poses are moved along their exact constant-velocity arcs, so this is
    independent of :func:`error_rates`.
    """
    e0 = compute_error(real, desired, model)
    e1 = compute_error(_advance(real, v_r, omega_r, h), _advance(desired, v_d, omega_d, h), model)
    return ErrorRates(
        (e1.xe - e0.xe) / h,
        (e1.ye - e0.ye) / h,
        wrap_angle(e1.theta_e - e0.theta_e) / h,
    )
