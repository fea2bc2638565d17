"""CSV and text serialisation of run traces, metrics and plans."""

import csv

import numpy as np

from .errors import ConfigError
from .sim import BASE_COLUMNS, RunTrace, trace_columns

FLOAT_FMT = ".9g"
PLAN_COLUMNS = ("t", "x", "y", "theta_d", "v_d", "omega_d", "v_dot_d", "omega_dot_d")


def fmt(x):
    return format(float(x), FLOAT_FMT)


def write_trace(trace, path):
    cols = trace.columns
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(",".join(cols) + "\n")
        block = np.column_stack([trace[c] for c in cols])
        for row in block:
            fh.write(",".join(fmt(x) for x in row) + "\n")


def read_trace(path, Ts=None):
    """Load a trace written by :func:`write_trace`.

    The controller type is inferred from the header.  ``Ts`` defaults to the
    spacing of the first two time stamps.
    """
    with open(path, encoding="utf-8", newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows:
        raise ConfigError(f"{path}: empty trace file")
    header = tuple(rows[0])
    if header == trace_columns("smc"):
        controller = "smc"
    elif header == trace_columns("lyapunov"):
        controller = "lyapunov"
    else:
        raise ConfigError(f"{path}: unrecognised trace header {','.join(header)}")
    try:
        block = np.array([[float(x) for x in r] for r in rows[1:]], dtype=float)
    except ValueError as exc:
        raise ConfigError(f"{path}: {exc}") from None
    block = block.reshape(-1, len(header))
    data = {c: block[:, i].copy() for i, c in enumerate(header)}
    if Ts is None:
        t = data["t"]
        Ts = float(t[1] - t[0]) if len(t) > 1 else 0.0
    return RunTrace(controller, Ts, data)


def format_metrics(metrics, extra=None):
    lines = []
    for k, v in metrics.as_dict().items():
        lines.append(f"{k} = {v if isinstance(v, bool) else fmt(v)}")
    for k, v in (extra or {}).items():
        lines.append(f"{k} = {v}")
    return "\n".join(lines) + "\n"


def write_plan(plan, path):
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(",".join(PLAN_COLUMNS) + "\n")
        for p in plan:
            fh.write(",".join(fmt(getattr(p, c)) for c in PLAN_COLUMNS) + "\n")


__all__ = ["BASE_COLUMNS", "FLOAT_FMT", "PLAN_COLUMNS", "fmt", "write_trace", "read_trace",
           "format_metrics", "write_plan"]
