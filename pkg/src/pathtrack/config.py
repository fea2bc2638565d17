"""INI scenario files.

Grammar (all sections and keys optional; unknown keys are rejected)::

    [scenario]
    name = paper_like
    controller = lyapunov            ; lyapunov | smc
    waypoints = paper_like           ; bundled path name or file relative to this config
    initial_offset = 0.5, 0.5, 0.1   ; dx [m], dy [m], dtheta [rad]
    initial_speed = 0
    duration_cap =                   ; seconds, empty for the whole plan
    error_model = derived            ; derived | literal
    substeps = 10
    forward_only = true

    [vehicle]   wheelbase_l, phi_max, v_filter_tau, phi_filter_tau, v_max
    [noise]     sigma_pose, sigma_theta, sigma_actuation, seed
    [planner]   Ts, a_max, v_max, corner_slowdown, corner_radius
    [lyapunov]  k1, k2, k3
    [smc]       k1, k2, k3, P1, Q1, P2, Q2, switch_mode, width, denominator, den_guard
"""

import configparser
import dataclasses
from importlib import resources
from pathlib import Path

from .errors import ConfigError
from .lyapunov import LyapGains
from .planner import PlannerConfig, read_waypoints
from .sim import ScenarioConfig
from .smc import SmcParams
from .vehicle import NoiseSpec, VehicleParams

SECTIONS = {
    "vehicle": VehicleParams,
    "noise": NoiseSpec,
    "planner": PlannerConfig,
    "lyapunov": LyapGains,
    "smc": SmcParams,
}
SCENARIO_KEYS = ("name", "controller", "waypoints", "initial_offset", "initial_speed",
                 "duration_cap", "error_model", "substeps", "forward_only")


def bundled_path(name):
    """Filesystem path of a bundled waypoint file, e.g. ``paper_like``."""
    ref = resources.files("pathtrack") / "paths" / f"{name}.txt"
    if not ref.is_file():
        raise ConfigError(f"no bundled path named {name!r}")
    return Path(str(ref))


def bundled_scenario():
    return Path(str(resources.files("pathtrack") / "scenarios" / "paper_like.ini"))


def resolve_waypoints(spec, base_dir):
    p = Path(spec)
    if not p.suffix and not p.is_absolute() and not (base_dir / p).exists():
        return bundled_path(spec)
    p = p if p.is_absolute() else base_dir / p
    if not p.is_file():
        raise ConfigError(f"waypoint file not found: {p}")
    return p


def _convert(raw, typ, where):
    typ = typ if isinstance(typ, type) else type(typ)
    try:
        if typ is bool:
            return {"true": True, "yes": True, "1": True, "on": True,
                    "false": False, "no": False, "0": False, "off": False}[raw.lower()]
        if typ is int:
            return int(raw)
        if typ is str:
            return raw
        return float(raw)
    except (ValueError, KeyError):
        raise ConfigError(f"{where}: cannot parse {raw!r} as {typ.__name__}") from None


def _section(parser, name, cls, where):
    if not parser.has_section(name):
        return cls()
    known = {f.name: f for f in dataclasses.fields(cls)}
    kwargs = {}
    for key, raw in parser.items(name):
        if key not in known:
            raise ConfigError(f"{where}: unknown key [{name}] {key}; expected one of {sorted(known)}")
        kwargs[key] = _convert(raw, known[key].default, f"{where} [{name}] {key}")
    return cls(**kwargs)


def load_scenario(path, overrides=None):
    """Build a :class:`ScenarioConfig` from an INI file.

    ``overrides`` maps ``section.key`` (or a bare scenario key) to a string
    value and is applied before conversion.
    """
    path = Path(path)
    parser = configparser.ConfigParser(inline_comment_prefixes=(";", "#"))
    parser.optionxform = str
    try:
        with open(path, encoding="utf-8") as fh:
            parser.read_file(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc.strerror}") from None
    except configparser.Error as exc:
        raise ConfigError(f"{path}: {exc}") from None

    for key, value in (overrides or {}).items():
        if value is None:
            continue
        sec, _, k = key.rpartition(".")
        sec = sec or "scenario"
        if not parser.has_section(sec):
            parser.add_section(sec)
        parser.set(sec, k, str(value))

    unknown = set(parser.sections()) - set(SECTIONS) - {"scenario"}
    if unknown:
        raise ConfigError(f"{path}: unknown section(s) {sorted(unknown)}")
    parts = {name: _section(parser, name, cls, path) for name, cls in SECTIONS.items()}

    sc = dict(parser.items("scenario")) if parser.has_section("scenario") else {}
    bad = set(sc) - set(SCENARIO_KEYS)
    if bad:
        raise ConfigError(f"{path}: unknown key(s) in [scenario]: {sorted(bad)}")
    where = f"{path} [scenario]"
    wp_file = resolve_waypoints(sc.get("waypoints", "paper_like"), path.parent)
    kwargs = {"waypoints": read_waypoints(wp_file)}
    for k in ("name", "controller", "error_model"):
        if k in sc:
            kwargs[k] = sc[k]
    if "initial_offset" in sc:
        vals = [_convert(x.strip(), float, f"{where} initial_offset")
                for x in sc["initial_offset"].split(",")]
        if len(vals) != 3:
            raise ConfigError(f"{where}: initial_offset needs three values")
        kwargs["initial_offset"] = tuple(vals)
    if "initial_speed" in sc:
        kwargs["initial_speed"] = _convert(sc["initial_speed"], float, where)
    if sc.get("duration_cap", "").strip():
        kwargs["duration_cap"] = _convert(sc["duration_cap"], float, where)
    if "substeps" in sc:
        kwargs["substeps"] = _convert(sc["substeps"], int, where)
    if "forward_only" in sc:
        kwargs["forward_only"] = _convert(sc["forward_only"], bool, where)
    return ScenarioConfig(lyap=parts["lyapunov"], smc=parts["smc"], vehicle=parts["vehicle"],
                          noise=parts["noise"], planner=parts["planner"], **kwargs), wp_file


def echo(cfg, wp_file):
    """Human-readable dump of the effective configuration."""
    lines = [f"scenario.name = {cfg.name}", f"scenario.controller = {cfg.controller}",
             f"scenario.waypoints = {wp_file}",
             f"scenario.initial_offset = {', '.join(map(repr, cfg.initial_offset))}",
             f"scenario.initial_speed = {cfg.initial_speed!r}",
             f"scenario.duration_cap = {cfg.duration_cap!r}",
             f"scenario.error_model = {cfg.error_model}", f"scenario.substeps = {cfg.substeps}",
             f"scenario.forward_only = {cfg.forward_only}"]
    for name, obj in (("vehicle", cfg.vehicle), ("noise", cfg.noise), ("planner", cfg.planner),
                      ("lyapunov", cfg.lyap), ("smc", cfg.smc)):
        for f in dataclasses.fields(obj):
            lines.append(f"{name}.{f.name} = {getattr(obj, f.name)!r}")
    return "\n".join(lines) + "\n"
