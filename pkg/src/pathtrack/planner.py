"""Waypoint planner: polyline with rounded corners and a trapezoidal speed profile.

The path is made of straight runs between waypoints joined by circular
fillets of radius ``corner_radius`` (shrunk when the neighbouring segments
are too short).  Speed is capped at ``v_max`` on straights and at
``v_max * corner_slowdown * cos(turn / 2)`` on fillets, and changes at no more
than ``a_max``.  The profile is sampled every ``Ts``.

Sampled points are a discrete-time trajectory of the bicycle model under
zero-order hold: ``v_d[k]`` is the mean speed over ``[t_k, t_k + Ts]`` and
``omega_d[k]`` the mean heading rate, and each pose is the exact arc
reached from the previous one with those values.
"""

import bisect
import math
from dataclasses import dataclass

from .errors import ConfigError
from .vehicle import arc_advance, wrap_angle


@dataclass(frozen=True)
class Waypoint:
    x: float
    y: float
    v_target: float | None = None


@dataclass(frozen=True)
class TrajectoryPoint:
    t: float
    x: float
    y: float
    theta_d: float
    v_d: float
    omega_d: float
    v_dot_d: float
    omega_dot_d: float

    @property
    def pose(self):
        return (self.x, self.y, self.theta_d)


@dataclass(frozen=True)
class PlannerConfig:
    Ts: float = 0.1
    a_max: float = 0.5
    v_max: float = 2.0
    corner_slowdown: float = 0.7
    corner_radius: float = 8.0

    def __post_init__(self):
        if not (self.Ts > 0 and self.a_max > 0 and self.v_max > 0):
            raise ConfigError("Ts, a_max and v_max must be > 0")
        if not 0 < self.corner_slowdown <= 1:
            raise ConfigError("corner_slowdown must lie in (0, 1]")
        if not self.corner_radius > 0:
            raise ConfigError("corner_radius must be > 0")


def heading(dx, dy):
    """Heading of direction (dx, dy) with theta measured from +y."""
    return math.atan2(dx, dy)


@dataclass(frozen=True)
class _Piece:
    start: tuple
    s0: float
    length: float
    curvature: float
    cap: float


def _geometry(waypoints, cfg):
    n = len(waypoints)
    lens, heads = [], []
    for a, b in zip(waypoints, waypoints[1:]):
        dx, dy = b.x - a.x, b.y - a.y
        d = math.hypot(dx, dy)
        if d == 0:
            raise ConfigError(f"zero-length segment at waypoint ({a.x}, {a.y})")
        lens.append(d)
        heads.append(heading(dx, dy))

    # tangent length and turn at each waypoint (zero at the ends)
    tang = [0.0] * n
    turn = [0.0] * n
    for j in range(1, n - 1):
        d = wrap_angle(heads[j] - heads[j - 1])
        if abs(d) > math.pi - 1e-6:
            raise ConfigError(f"waypoint {j} reverses direction; cannot round the corner")
        if abs(d) < 1e-9:
            continue
        turn[j] = d
        tang[j] = cfg.corner_radius * math.tan(abs(d) / 2)
    for j in range(1, n - 1):
        tang[j] = min(tang[j], 0.5 * lens[j - 1], 0.5 * lens[j])

    pieces, nodes = [], []  # nodes: (s, speed limit) point constraints
    s = 0.0
    for i in range(n - 1):
        a = waypoints[i]
        ux, uy = math.sin(heads[i]), math.cos(heads[i])
        start = (a.x + tang[i] * ux, a.y + tang[i] * uy, heads[i])
        run = lens[i] - tang[i] - tang[i + 1]
        if run > 1e-12:
            pieces.append(_Piece(start, s, run, 0.0, cfg.v_max))
            s += run
        j = i + 1
        if j < n - 1:
            vt = waypoints[j].v_target
            if turn[j] != 0.0:
                b = waypoints[j]
                r = tang[j] / math.tan(abs(turn[j]) / 2)
                length = r * abs(turn[j])
                cap = cfg.v_max * cfg.corner_slowdown * math.cos(turn[j] / 2)
                if vt is not None:
                    cap = min(cap, vt)
                if cap <= 0:
                    raise ConfigError(f"corner speed at waypoint {j} must be > 0")
                fstart = (b.x - tang[j] * ux, b.y - tang[j] * uy, heads[i])
                pieces.append(_Piece(fstart, s, length, turn[j] / length, cap))
                s += length
            elif vt is not None:
                nodes.append((s, vt))
    return pieces, nodes, s


def _time_pieces(bounds, caps, limits, a):
    """Trapezoidal time law over consecutive arc-length intervals.

    ``bounds`` are interval boundaries in s, ``caps`` the per-interval speed
    caps and ``limits`` the already-tightened boundary speeds.  Returns a list
    of ``(t0, s0, v0, acc)`` pieces plus the total time.
    """
    out = []
    t = 0.0
    for i, cap in enumerate(caps):
        s0, ds = bounds[i], bounds[i + 1] - bounds[i]
        v0, v1 = limits[i], limits[i + 1]
        peak2 = 0.5 * (v0 * v0 + v1 * v1 + 2 * a * ds)
        peak = math.sqrt(peak2)
        if peak <= cap:
            segs = [(max(peak - v0, 0.0) / a, v0, a), (max(peak - v1, 0.0) / a, peak, -a)]
        else:
            cruise = ds - (cap * cap - v0 * v0) / (2 * a) - (cap * cap - v1 * v1) / (2 * a)
            segs = [((cap - v0) / a, v0, a), (max(cruise, 0.0) / cap, cap, 0.0),
                    ((cap - v1) / a, cap, -a)]
        s = s0
        for dur, v, acc in segs:
            if dur <= 0:
                continue
            out.append((t, s, v, acc))
            s += v * dur + 0.5 * acc * dur * dur
            t += dur
    return out, t


def _speed_profile(pieces, nodes, total, v_entry, v_exit, cfg):
    a = cfg.a_max
    bounds = [p.s0 for p in pieces] + [total]
    caps = [p.cap for p in pieces]
    limits = [math.inf] * len(bounds)
    for i, c in enumerate(caps):
        limits[i] = min(limits[i], c)
        limits[i + 1] = min(limits[i + 1], c)
    for s, v in nodes:
        k = min(range(len(bounds)), key=lambda i: abs(bounds[i] - s))
        limits[k] = min(limits[k], v)
    if v_entry > limits[0] + 1e-12:
        raise ConfigError(f"entry speed {v_entry} exceeds the speed cap {limits[0]}")
    limits[0] = v_entry
    limits[-1] = min(limits[-1], v_exit)
    for i in range(1, len(limits)):
        ds = bounds[i] - bounds[i - 1]
        limits[i] = min(limits[i], math.sqrt(limits[i - 1] ** 2 + 2 * a * ds))
    for i in range(len(limits) - 2, -1, -1):
        ds = bounds[i + 1] - bounds[i]
        limits[i] = min(limits[i], math.sqrt(limits[i + 1] ** 2 + 2 * a * ds))
    if limits[0] < v_entry - 1e-9:
        raise ConfigError(f"entry speed {v_entry} cannot be braked to {v_exit} "
                          f"within {total:.3f} m at a_max={a}")
    return _time_pieces(bounds, caps, limits, a)


def _distance(tpieces, t_total, total, v_exit, t):
    if t >= t_total:
        return total + v_exit * (t - t_total)
    k = bisect.bisect_right([p[0] for p in tpieces], t) - 1
    t0, s0, v0, acc = tpieces[max(k, 0)]
    tau = t - t0
    return min(s0 + v0 * tau + 0.5 * acc * tau * tau, total)


def _heading_at(pieces, s):
    k = bisect.bisect_right([p.s0 for p in pieces], s) - 1
    p = pieces[max(k, 0)]
    u = min(s - p.s0, p.length)
    return p.start[2] + p.curvature * u


def _sample(waypoints, pieces, nodes, total, v_entry, v_exit, cfg):
    tpieces, t_total = _speed_profile(pieces, nodes, total, v_entry, v_exit, cfg)
    ts = cfg.Ts
    n = max(math.ceil(t_total / ts - 1e-9), 1)
    s = [_distance(tpieces, t_total, total, v_exit, k * ts) for k in range(n + 1)]
    th = [_heading_at(pieces, si) for si in s]

    v = [(s[k + 1] - s[k]) / ts for k in range(n)] + [v_exit]
    w = [(th[k + 1] - th[k]) / ts for k in range(n)] + [0.0]
    pose = (waypoints[0].x, waypoints[0].y, th[0])
    out = []
    for k in range(n + 1):
        v_dot = (v[k + 1] - v[k]) / ts if k < n else 0.0
        w_dot = (w[k + 1] - w[k]) / ts if k < n else 0.0
        out.append(TrajectoryPoint(k * ts, pose[0], pose[1], wrap_angle(pose[2]),
                                   v[k], w[k], v_dot, w_dot))
        if k < n:
            ds = s[k + 1] - s[k]
            kappa = (th[k + 1] - th[k]) / ds if ds > 0 else 0.0
            pose = arc_advance(pose, ds, kappa)
    return out


def plan_segment(start, end, v_entry, cfg, v_exit=None):
    """Straight-line segment sampled every ``cfg.Ts``.

    ``v_exit`` defaults to ``end.v_target`` (or 0 when unset).
    """
    if v_exit is None:
        v_exit = end.v_target if end.v_target is not None else 0.0
    if v_entry < 0 or v_exit < 0:
        raise ConfigError("segment speeds must be >= 0")
    pieces, nodes, total = _geometry([start, end], cfg)
    return _sample([start, end], pieces, nodes, total, v_entry, min(v_exit, cfg.v_max), cfg)


def plan_path(waypoints, cfg):
    """Plan through all waypoints, starting and (by default) ending at rest."""
    waypoints = list(waypoints)
    if len(waypoints) < 2:
        raise ConfigError("a path needs at least two waypoints")
    last = waypoints[-1].v_target
    v_exit = min(last, cfg.v_max) if last is not None else 0.0
    pieces, nodes, total = _geometry(waypoints, cfg)
    return _sample(waypoints, pieces, nodes, total, 0.0, v_exit, cfg)


def trapezoid_duration(length, v_entry, v_exit, v_max, a_max):
    """Closed-form duration of a single-segment trapezoid (or triangle) profile."""
    peak = math.sqrt(0.5 * (v_entry ** 2 + v_exit ** 2) + a_max * length)
    if peak <= v_max:
        return (2 * peak - v_entry - v_exit) / a_max
    d_acc = (v_max ** 2 - v_entry ** 2) / (2 * a_max)
    d_dec = (v_max ** 2 - v_exit ** 2) / (2 * a_max)
    return (v_max - v_entry) / a_max + (v_max - v_exit) / a_max + (length - d_acc - d_dec) / v_max


def read_waypoints(path):
    """Parse ``x,y[,v_target]`` lines; ``#`` starts a comment."""
    pts = []
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = [p.strip() for p in line.split(",")]
            if len(parts) not in (2, 3):
                raise ConfigError(f"{path}:{lineno}: expected 'x,y[,v_target]', got {raw.strip()!r}")
            try:
                vals = [float(p) for p in parts]
            except ValueError as exc:
                raise ConfigError(f"{path}:{lineno}: {exc}") from None
            pts.append(Waypoint(vals[0], vals[1], vals[2] if len(vals) == 3 else None))
    if len(pts) < 2:
        raise ConfigError(f"{path}: need at least two waypoints, found {len(pts)}")
    return pts
