"""Vector figures for run traces.

Figures are built on a bare :class:`~matplotlib.figure.Figure` (no pyplot
state) and saved as SVG with a fixed hash salt and no date stamp, so the same
trace always produces the same bytes.
"""

import matplotlib
import numpy as np
from matplotlib.figure import Figure

from .errors import ConfigError

KINDS = ("path", "errors", "surfaces", "commands")

STYLE = {
    "font.size": 9,
    "axes.grid": True,
    "grid.alpha": 0.3,
    "lines.linewidth": 1.2,
    "legend.fontsize": 8,
    "svg.hashsalt": "pathtrack",
    "svg.fonttype": "path",
}


def _save(fig, path):
    fig.savefig(path, format="svg", metadata={"Date": None})


def _path(fig, traces):
    ax = fig.add_subplot()
    first = traces[0][1]
    ax.plot(first["xd"], first["yd"], "k--", label="desired")
    for label, tr in traces:
        ax.plot(tr["x"], tr["y"], label=label)
    ax.set_xlabel("x [m]")
    ax.set_ylabel("y [m]")
    ax.set_aspect("equal", adjustable="datalim")
    ax.legend()


def _errors(fig, traces):
    axes = fig.subplots(3, 1, sharex=True)
    for ax, col, unit in zip(axes, ("xe", "ye", "thetae"), ("m", "m", "rad")):
        for label, tr in traces:
            ax.plot(tr["t"], tr[col], label=label)
        ax.set_ylabel(f"{col} [{unit}]")
    axes[-1].set_xlabel("t [s]")
    axes[0].legend()


def _surfaces(fig, traces):
    axes = fig.subplots(2, 1, sharex=True)
    for ax, col in zip(axes, ("s1", "s2")):
        for label, tr in traces:
            ax.plot(tr["t"], tr[col], label=label)
        ax.set_ylabel(col)
    axes[-1].set_xlabel("t [s]")
    axes[0].legend()


def _commands(fig, traces):
    axes = fig.subplots(2, 1, sharex=True)
    for label, tr in traces:
        axes[0].plot(tr["t"], tr["v_cmd"], label=label)
        axes[1].plot(tr["t"], np.degrees(tr["phi_cmd"]), label=label)
    axes[0].plot(traces[0][1]["t"], traces[0][1]["vd"], "k--", label="v_d")
    axes[0].set_ylabel("v [m/s]")
    axes[1].set_ylabel("steering [deg]")
    axes[1].set_xlabel("t [s]")
    axes[0].legend()


_DRAW = {"path": _path, "errors": _errors, "surfaces": _surfaces, "commands": _commands}


def plot(traces, kind, path):
    """Write figure ``kind`` for one or more traces to ``path``.

    ``traces`` is a trace or a list of ``(label, trace)`` pairs (an overlay).
    """
    if kind not in KINDS:
        raise ConfigError(f"unknown plot kind {kind!r}; valid kinds: {', '.join(KINDS)}")
    if not isinstance(traces, (list, tuple)):
        traces = [(traces.controller, traces)]
    if kind == "surfaces":
        traces = [(lab, tr) for lab, tr in traces if "s1" in tr.data]
        if not traces:
            raise ConfigError("kind 'surfaces' needs a sliding-mode trace (no s1/s2 columns)")
    with matplotlib.rc_context(STYLE):
        fig = Figure(figsize=(6.4, 4.8) if kind == "path" else (6.4, 5.6), layout="constrained")
        _DRAW[kind](fig, traces)
        _save(fig, path)
    return path
