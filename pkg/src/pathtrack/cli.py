"""Command-line front end.

Verbs: ``run``, ``compare``, ``plot`` and ``plan``.  Exit status is 0 on
success, 2 for configuration or input errors and 3 when a controller hits a
singularity during the run.
"""

import argparse
import dataclasses
import os
import sys
from pathlib import Path

from . import plotting, traceio
from .config import bundled_scenario, echo, load_scenario
from .errors import ConfigError, SingularityError
from .planner import plan_path
from .sim import CONTROLLERS, run
from .smc import DENOMINATORS, SWITCH_MODES
from .errframe import ERROR_MODELS

ENV_OUT = "PATHTRACK_OUT"
DEFAULT_OUT = "pathtrack_out"
EXIT_OK, EXIT_CONFIG, EXIT_SINGULAR = 0, 2, 3

WAYPOINT_HELP = ("Waypoint files hold one 'x,y[,v_target]' per line; '#' starts a comment. "
                 "Configs are INI files with [scenario], [vehicle], [noise], [planner], "
                 "[lyapunov] and [smc] sections.")


def out_dir(args):
    d = Path(args.out or os.environ.get(ENV_OUT) or DEFAULT_OUT)
    d.mkdir(parents=True, exist_ok=True)
    return d


def scenario_from_args(args):
    overrides = {
        "controller": getattr(args, "controller", None),
        "error_model": args.error_model,
        "noise.seed": args.seed,
        "smc.switch_mode": args.switch_mode,
        "smc.denominator": args.smc_denominator,
    }
    return load_scenario(args.config or bundled_scenario(), overrides)


def write_figures(traces, directory, prefix=""):
    for kind in plotting.KINDS:
        if kind == "surfaces" and not any("s1" in tr.data for _, tr in traces):
            continue
        plotting.plot(traces, kind, directory / f"{prefix}{kind}.svg")


def cmd_run(args):
    cfg, wp_file = scenario_from_args(args)
    out = out_dir(args)
    trace, metrics = run(cfg)
    traceio.write_trace(trace, out / "trace.csv")
    (out / "metrics.txt").write_text(
        traceio.format_metrics(metrics, {"controller": cfg.controller, "seed": cfg.noise.seed}),
        encoding="utf-8")
    if not args.no_plots:
        write_figures([(cfg.controller, trace)], out)
    print(f"wrote {out / 'trace.csv'} ({len(trace)} steps)")
    return EXIT_OK


def _winners(results):
    names = list(results)
    rows = []
    for key in dataclasses.asdict(next(iter(results.values()))):
        vals = [getattr(results[n], key) for n in names]
        if isinstance(vals[0], bool):
            rows.append((key, vals, "-"))
            continue
        best = min(range(len(vals)), key=lambda i: vals[i])
        rows.append((key, vals, names[best]))
    return rows


def cmd_compare(args):
    cfg, wp_file = scenario_from_args(args)
    out = out_dir(args)
    mode = cfg.smc.switch_mode
    alt = "tanh" if mode == "sign" else "sign"
    variants = {
        "lyapunov": dataclasses.replace(cfg, controller="lyapunov"),
        f"smc-{mode}": dataclasses.replace(cfg, controller="smc"),
        f"smc-{alt}": dataclasses.replace(cfg, controller="smc",
                                          smc=dataclasses.replace(cfg.smc, switch_mode=alt)),
    }
    plan = plan_path(cfg.waypoints, cfg.planner)
    traces, results = {}, {}
    for label, c in variants.items():
        traces[label], results[label] = run(c, plan=plan)

    names = list(results)
    width = max(max(len(n) for n in names), 15) + 2
    lines = [f"seed = {cfg.noise.seed}", "",
             "metric".ljust(18) + "".join(n.rjust(width) for n in names) + "  winner"]
    for key, vals, win in _winners(results):
        cells = "".join((str(v) if isinstance(v, bool) else traceio.fmt(v)).rjust(width)
                        for v in vals)
        lines.append(key.ljust(18) + cells + f"  {win}")
    tv = {n: results[n].steering_tv for n in names}
    smooth = f"smc-{mode if mode != 'sign' else alt}"
    ratio = traceio.fmt(tv[smooth] / tv["smc-sign"]) if tv["smc-sign"] > 0 else "n/a"
    lines += ["", f"steering TV lyapunov < smc-sign: {tv['lyapunov'] < tv['smc-sign']}",
              f"steering TV ratio {smooth}/smc-sign: {ratio}"]
    summary = list(lines)
    lines += ["", "[config]", echo(cfg, wp_file)]
    (out / "comparison.txt").write_text("\n".join(lines), encoding="utf-8")
    for label, tr in traces.items():
        traceio.write_trace(tr, out / f"trace_{label}.csv")
    if not args.no_plots:
        write_figures(list(traces.items()), out, prefix="compare_")
    print("\n".join(summary))
    return EXIT_OK


def cmd_plot(args):
    trace = traceio.read_trace(args.trace)
    dest = Path(args.output) if args.output else Path(args.trace).with_name(f"{args.kind}.svg")
    plotting.plot(trace, args.kind, dest)
    print(f"wrote {dest}")
    return EXIT_OK


def cmd_plan(args):
    cfg, _ = scenario_from_args(args)
    out = out_dir(args)
    plan = plan_path(cfg.waypoints, cfg.planner)
    traceio.write_plan(plan, out / "plan.csv")
    print(f"wrote {out / 'plan.csv'} ({len(plan)} points, {plan[-1].t:.1f} s)")
    return EXIT_OK


def build_parser():
    p = argparse.ArgumentParser(prog="pathtrack", description=__doc__.split("\n\n")[0],
                                epilog=WAYPOINT_HELP)
    sub = p.add_subparsers(dest="verb", required=True)

    def scenario_flags(sp, controller=True):
        sp.add_argument("--config", help="INI scenario file (default: bundled paper_like.ini)")
        sp.add_argument("--out", help=f"output directory (default: ${ENV_OUT} or ./{DEFAULT_OUT})")
        sp.add_argument("--seed", type=int, help="noise seed override")
        if controller:
            sp.add_argument("--controller", choices=CONTROLLERS)
        sp.add_argument("--switch-mode", choices=SWITCH_MODES)
        sp.add_argument("--error-model", choices=ERROR_MODELS)
        sp.add_argument("--smc-denominator", choices=DENOMINATORS)

    sp = sub.add_parser("run", help="simulate one controller", epilog=WAYPOINT_HELP)
    scenario_flags(sp)
    sp.add_argument("--no-plots", action="store_true", help="skip SVG figures")
    sp.set_defaults(func=cmd_run)

    sp = sub.add_parser("compare", help="Lyapunov vs sliding mode on identical conditions")
    scenario_flags(sp, controller=False)
    sp.add_argument("--no-plots", action="store_true", help="skip SVG figures")
    sp.set_defaults(func=cmd_compare)

    sp = sub.add_parser("plot", help="render a trace.csv as an SVG figure")
    sp.add_argument("trace")
    sp.add_argument("--kind", required=True, help=f"one of {', '.join(plotting.KINDS)}")
    sp.add_argument("--output", "-o", help="SVG file (default: <kind>.svg next to the trace)")
    sp.set_defaults(func=cmd_plot)

    sp = sub.add_parser("plan", help="dump the planned trajectory as plan.csv")
    scenario_flags(sp, controller=False)
    sp.set_defaults(func=cmd_plan)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"pathtrack: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except FileNotFoundError as exc:
        print(f"pathtrack: file not found: {exc.filename}", file=sys.stderr)
        return EXIT_CONFIG
    except SingularityError as exc:
        print(f"pathtrack: singularity: {exc}", file=sys.stderr)
        return EXIT_SINGULAR


if __name__ == "__main__":
    sys.exit(main())
