"""Command-line front end. Every command writes one JSON report to stdout.

Exit codes: 0 success, 1 runtime failure or bound violation, 2 usage error.
"""
from __future__ import annotations

import argparse
import json
import math
import secrets
import sys
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from . import beacon, coloring, oneround, schedules, simulator
from .selftest import run_selftest

SCHEMA_VERSION = "1.0"
COMMANDS = ("gen-schedule", "simulate", "sweep", "beacon", "orient", "oracle", "color", "selftest")
RANDOMIZED = {"simulate", "beacon", "orient"}


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    params: dict
    seed: Optional[int]
    seed_generated: bool
    output_path: Optional[str]
    pretty: bool
    as_json: bool


def _channels(text: str) -> list[int]:
    try:
        out = [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated channels, got {text!r}")
    if not out:
        raise argparse.ArgumentTypeError("empty channel list")
    return out


def _universe(text: str) -> int:
    n = int(text)
    if n < 2:
        raise argparse.ArgumentTypeError(f"n must be >= 2, got {n}")
    return n


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def _nonnegative(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {v}")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON (the default for every command but color)")
    common.add_argument("--pretty", action="store_true", help="print a human-readable summary instead of JSON")
    common.add_argument("--out", dest="output_path", help="also write the report to this path")

    parser = argparse.ArgumentParser(prog="rendezvous", description="Blind rendezvous schedules and simulations.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen-schedule", parents=[common], help="emit the slots of one schedule")
    p.add_argument("--set", dest="channels", type=_channels, required=True)
    p.add_argument("--n", type=_universe, required=True)
    p.add_argument("--family", choices=("general", "pair", "sweep"), default="general")
    p.add_argument("--symmetric", action="store_true")
    p.add_argument("--horizon", type=_nonnegative)

    p = sub.add_parser("simulate", parents=[common], help="random trial batch for a schedule family")
    p.add_argument("--family", choices=simulator.FAMILIES, required=True)
    p.add_argument("--n", type=_universe, required=True)
    p.add_argument("--pairs", type=_nonnegative, required=True)
    p.add_argument("--seed", type=int)
    p.add_argument("--min-size", type=_positive, default=1)
    p.add_argument("--max-size", type=_positive)
    p.add_argument("--horizon-factor", type=_positive, default=4)
    p.add_argument("--workers", type=_positive, default=1)

    p = sub.add_parser("sweep", parents=[common], help="sweep all wake offsets for two sets")
    p.add_argument("--a", type=_channels, required=True)
    p.add_argument("--b", type=_channels, required=True)
    p.add_argument("--n", type=_universe, required=True)
    p.add_argument("--family", choices=("pair", "general", "symmetric", "sweep"), default="general")
    p.add_argument("--shift-bound", type=_positive)
    p.add_argument("--horizon", type=_nonnegative)

    p = sub.add_parser("beacon", parents=[common], help="one-bit beacon trials")
    p.add_argument("--n", type=_universe, required=True)
    p.add_argument("--si", type=_channels, required=True)
    p.add_argument("--sj", type=_channels, required=True)
    p.add_argument("--seeds", type=_positive, required=True)
    p.add_argument("--seed", type=int)
    p.add_argument("--max-blocks", type=_positive)
    p.add_argument("--d", type=_positive, default=beacon.DEFAULT_D)

    p = sub.add_parser("orient", parents=[common], help="one-round orientation maximizing in-pairs")
    p.add_argument("--edges", required=True)
    p.add_argument("--seed", type=int)
    p.add_argument("--rounds", type=_positive, default=16)
    p.add_argument("--restarts", type=_positive, default=5)

    p = sub.add_parser("oracle", parents=[common], help="exhaustive optimal rendezvous time on tiny instances")
    p.add_argument("--n", type=_universe, required=True)
    p.add_argument("--k", type=_positive, required=True)
    p.add_argument("--cap", type=_positive, required=True)
    p.add_argument("--mode", choices=("sync", "async", "both"), default="sync")

    p = sub.add_parser("color", parents=[common], help="color of edge (a, b) in the Ramsey coloring")
    p.add_argument("--n", type=_universe, required=True)
    p.add_argument("--a", type=_positive, required=True)
    p.add_argument("--b", type=_positive, required=True)

    p = sub.add_parser("selftest", parents=[common], help="run the invariant suites")
    p.add_argument("--ramsey-max", type=_universe, default=coloring.VERIFY_CAP)
    return parser


def parse_args(argv: Optional[Sequence[str]] = None) -> RunConfig:
    """Parse and validate; argparse exits with status 2 on usage errors."""
    parser = build_parser()
    ns = parser.parse_args(argv)
    params = {k: v for k, v in sorted(vars(ns).items())
              if k not in ("command", "seed", "output_path", "pretty", "json")}
    seed = getattr(ns, "seed", None)
    generated = False
    if ns.command in RANDOMIZED and seed is None:
        seed, generated = secrets.randbits(63), True
    try:
        _validate(ns.command, params)
    except UsageError as exc:
        parser.error(str(exc))
    return RunConfig(ns.command, params, seed, generated, ns.output_path, ns.pretty, ns.json)


def _validate(command: str, p: dict) -> None:
    if command == "color" and not 1 <= p["a"] < p["b"] <= p["n"]:
        raise UsageError("color needs 1 <= a < b <= n")
    if command == "simulate":
        if p["max_size"] is None:
            p["max_size"] = min(2 if p["family"] == "pair" else 8, p["n"])
        if not p["min_size"] <= p["max_size"] <= p["n"]:
            raise UsageError("need min-size <= max-size <= n")
        if p["family"] == "pair" and p["max_size"] > 2:
            raise UsageError("pair family supports sets of size at most 2")
    for key in ("channels", "a", "b", "si", "sj"):
        if command in ("gen-schedule", "sweep", "beacon") and key in p:
            if max(p[key]) > p["n"] or min(p[key]) < 1:
                raise UsageError(f"--{key} channels must lie in [1, n]")
    if command == "gen-schedule" and p["family"] == "pair" and len(set(p["channels"])) > 2:
        raise UsageError("pair family supports sets of size at most 2")
    if command == "oracle" and p["k"] > p["n"]:
        raise UsageError("need k <= n")


# -- commands -----------------------------------------------------------------


def _schedule(family: str, channels, n: int, symmetric: bool = False) -> schedules.Schedule:
    cs = tuple(sorted(set(channels)))
    s = simulator.family_schedule(family, cs, n)
    return schedules.symmetric_wrap(s, cs) if symmetric else s


def cmd_gen_schedule(p: dict, seed) -> tuple[dict, list]:
    s = _schedule(p["family"], p["channels"], p["n"], p["symmetric"])
    horizon = p["horizon"] if p["horizon"] is not None else s.period
    return {
        "n": p["n"],
        "set": sorted(set(p["channels"])),
        "period": s.period,
        "slots": [int(c) for c in s.slots(0, horizon)],
    }, []


def cmd_simulate(p: dict, seed) -> tuple[dict, list]:
    cfg = simulator.TrialConfig(
        family=p["family"], n=p["n"], pairs=p["pairs"], seed=seed, min_size=p["min_size"],
        max_size=p["max_size"], horizon_factor=p["horizon_factor"], workers=p["workers"],
    )
    report = simulator.run_trial_batch(cfg)
    return report.to_dict(), report.violations


def cmd_sweep(p: dict, seed) -> tuple[dict, list]:
    sa = _schedule(p["family"], p["a"], p["n"])
    sb = _schedule(p["family"], p["b"], p["n"])
    # The sweep baseline only promises a meeting when both agents wake together.
    bound = None if p["family"] == "sweep" else simulator.family_bound(
        p["family"], len(set(p["a"])), len(set(p["b"])), p["n"])
    shift_bound = p["shift_bound"] or math.lcm(sa.period, sb.period)
    horizon = p["horizon"] if p["horizon"] is not None else 4 * (bound or p["n"])
    report = simulator.sweep_shifts(sa, sb, shift_bound, horizon)
    violations = []
    if bound is not None and set(p["a"]) & set(p["b"]) and (report.misses or report.worst_elapsed > bound):
        violations.append({"worst_elapsed": report.worst_elapsed, "misses": report.misses, "bound": bound})
    out = report.to_dict()
    out["bound"] = bound
    return out, violations


def cmd_beacon(p: dict, seed) -> tuple[dict, list]:
    n, si, sj = p["n"], sorted(set(p["si"])), sorted(set(p["sj"]))
    if not set(si) & set(sj):
        raise ValueError("--si and --sj are disjoint")
    horizon = beacon.failure_horizon(n, len(si), len(sj))
    max_blocks = p["max_blocks"] or 4 * horizon
    B = beacon.block_length(n, p["d"])
    per_seed = []
    for i in range(p["seeds"]):
        rng = np.random.default_rng([seed, i])
        bseed = int(rng.integers(2**63))
        wake = tuple(int(w) for w in rng.integers(0, 4 * B, size=2))
        out = beacon.simulate_beacon(si, sj, bseed, max_blocks, wake, n=n, d=p["d"])
        per_seed.append(out.blocks)
    met = np.array([b for b in per_seed if b is not None])
    failures_at_horizon = sum(1 for b in per_seed if b is None or b > horizon)
    quantiles = {q: (float(np.quantile(met, float(q))) if len(met) else None) for q in ("0.5", "0.9", "0.99")}
    return {
        "block_length": B,
        "failure_horizon_blocks": horizon,
        "per_seed_blocks": per_seed,
        "quantiles": quantiles,
        "failure_rate_at_horizon": failures_at_horizon / len(per_seed),
    }, []


def cmd_orient(p: dict, seed) -> tuple[dict, list]:
    g = oneround.parse_edges(p["edges"])
    best = oneround.orient_one_round(g, seed, rounds=p["rounds"], restarts=p["restarts"])
    in_pairs = oneround.count_in_pairs(best)
    out = {
        "edges": [list(e) for e in best.edges],
        "orientation": list(best.orientation),
        "in_pairs": in_pairs,
        "incident_pairs": oneround.count_incident_pairs(best),
        "optimum": None,
        "ratio": None,
    }
    if len(g.edges) <= oneround.MAX_BRUTE_FORCE_EDGES:
        opt, _ = oneround.brute_force_optimal_orientation(g)
        out["optimum"] = opt
        out["ratio"] = in_pairs / opt if opt else 1.0
    return out, []


def cmd_oracle(p: dict, seed) -> tuple[dict, list]:
    out = {}
    if p["mode"] in ("sync", "both"):
        out["sync"] = simulator.brute_force_optimal_sync(p["n"], p["k"], p["cap"]).to_dict()
    if p["mode"] in ("async", "both"):
        out["async"] = simulator.brute_force_optimal_async_cyclic(p["n"], p["k"], p["cap"]).to_dict()
    return out, []


def cmd_color(p: dict, seed) -> tuple[dict, list]:
    return {"color": coloring.color_edge(p["a"], p["b"], p["n"])}, []


def cmd_selftest(p: dict, seed) -> tuple[dict, list]:
    result = run_selftest(ramsey_max=p["ramsey_max"])
    failures = [c for c in result["checks"] if not c["passed"]]
    return result, failures


HANDLERS = {
    "gen-schedule": cmd_gen_schedule,
    "simulate": cmd_simulate,
    "sweep": cmd_sweep,
    "beacon": cmd_beacon,
    "orient": cmd_orient,
    "oracle": cmd_oracle,
    "color": cmd_color,
    "selftest": cmd_selftest,
}


def make_report(config: RunConfig, results: dict, violations: list) -> dict:
    params = dict(config.params)
    if config.command in RANDOMIZED:
        params["seed"] = config.seed
        params["seed_generated"] = config.seed_generated
    return {
        "schema_version": SCHEMA_VERSION,
        "command": config.command,
        "params": params,
        "results": results,
        "bound_violations": violations,
    }


def _pretty(report: dict) -> str:
    lines = [f"{report['command']}  (schema {report['schema_version']})"]
    for k, v in report["params"].items():
        lines.append(f"  {k:<16} {v}")
    lines.append("results:")
    for k, v in report["results"].items():
        text = json.dumps(v)
        lines.append(f"  {k:<24} {text if len(text) <= 72 else text[:69] + '...'}")
    lines.append(f"bound violations: {len(report['bound_violations'])}")
    return "\n".join(lines)


def main(argv: Optional[Sequence[str]] = None) -> int:
    config = parse_args(argv)
    try:
        results, violations = HANDLERS[config.command](config.params, config.seed)
    except (ValueError, RuntimeError) as exc:
        print(f"rendezvous {config.command}: error: {exc}", file=sys.stderr)
        return 1
    report = make_report(config, results, violations)
    text = json.dumps(report, indent=2)
    if config.output_path:
        with open(config.output_path, "w") as fh:
            fh.write(text + "\n")
    if config.command == "color" and not (config.as_json or config.pretty):
        print(results["color"])
    elif config.pretty:
        print(_pretty(report))
    else:
        print(text)
    return 1 if violations else 0


if __name__ == "__main__":
    sys.exit(main())
