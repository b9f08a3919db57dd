"""Command-line front end.

Seven subcommands wrap the engines: ``exact-mean``, ``ergodicity``,
``volume``, ``simulate``, ``scan``, ``convergence``, ``generator-check``.
Options resolve with the precedence CLI flag > JSON config file > built-in
default, and every run's fully resolved parameter set lands in a manifest:
embedded in JSON output, written as a ``<out>.manifest.json`` sidecar next
to CSV output files.  Passing a manifest to ``--config`` reruns it —
bit-identically for exact computations and seeded simulations.

Exit codes: 0 success (all internal cross-checks passed), 1 internal check
failure, 2 validation error, 3 stationary solve did not converge.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from datetime import datetime, timezone
from importlib import resources
from typing import Any, Optional, Sequence

from . import __version__
from .ergodicity import (
    coin_game_ergodicity,
    influence_sum_bruteforce,
    min_rate_sum_bruteforce,
    mixture_ergodicity,
    volume_estimate,
)
from .exact import NotConverged, convergence_table, mean_profit
from .generators import CylinderFunction, embedding_residual, periodic_residual
from .montecarlo import SimConfig, parrondo_scan, simulate
from .rules import (
    GameParams,
    PeriodicPattern,
    PureGame,
    RandomMixture,
    SchedulerSpec,
    scheduler_label,
)

_TOOL = "parrondo-ring"
_SCHEMA_VERSION = 1
_COMMANDS = (
    "exact-mean",
    "ergodicity",
    "volume",
    "simulate",
    "scan",
    "convergence",
    "generator-check",
)
# keys a JSON config file may carry (superset over all subcommands)
_CONFIG_KEYS = {
    "n",
    "gamma",
    "r",
    "s",
    "p",
    "pure",
    "turns",
    "burnin",
    "seed",
    "grid",
    "tol",
    "tolerances",
    "max_iters",
    "samples",
    "constraint",
    "threads",
    "k",
    "game",
    "format",
}


def result_schema() -> dict:
    """The published JSON schema for the output envelope."""
    text = resources.files(__package__).joinpath("schemas/result.schema.json").read_text()
    return json.loads(text)


# -- option plumbing -----------------------------------------------------------


def _fmt_cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return "%.17g" % value
    return str(value)


def _parse_p(text: str) -> list[float]:
    parts = [part.strip() for part in text.split(",")]
    if len(parts) != 4:
        raise ValueError(f"--p wants four comma-separated probabilities, got {text!r}")
    return [float(part) for part in parts]


def _parse_n_list(text: str) -> list[int]:
    """``8``, ``6,8,10``, or an inclusive range ``6..14``."""
    text = text.strip()
    if ".." in text:
        lo, hi = text.split("..", 1)
        values = list(range(int(lo), int(hi) + 1))
        if not values:
            raise ValueError(f"empty n range {text!r}")
        return values
    return [int(part) for part in text.split(",")]


def _parse_grid(text: str) -> list[list[float]]:
    """Semicolon-separated points, each ``gamma,p0,p1,p2,p3``."""
    points = []
    for chunk in text.split(";"):
        parts = [float(part) for part in chunk.split(",")]
        if len(parts) != 5:
            raise ValueError(f"grid point wants gamma,p0,p1,p2,p3 — got {chunk!r}")
        points.append(parts)
    return points


def _load_config(path: Optional[str], command: str) -> dict:
    if path is None:
        return {}
    with open(path, encoding="utf-8") as handle:
        doc = json.load(handle)
    if not isinstance(doc, dict):
        raise ValueError(f"config {path} is not a JSON object")
    if "schema_version" in doc and isinstance(doc.get("manifest"), dict):
        doc = doc["manifest"]  # a JSON result envelope: rerun its manifest
    if "manifest_version" in doc:
        if doc.get("command") != command:
            raise ValueError(
                f"manifest {path} was written by {doc.get('command')!r}, "
                f"not {command!r}"
            )
        doc = doc.get("params", {})
    unknown = set(doc) - _CONFIG_KEYS
    if unknown:
        raise ValueError(f"unknown config keys: {sorted(unknown)}")
    return doc


def _resolve(args: argparse.Namespace, config: dict, key: str, default: Any = None) -> Any:
    cli_value = getattr(args, key.replace("-", "_"), None)
    if cli_value is not None:
        return cli_value
    if key in config and config[key] is not None:
        return config[key]
    return default


def _resolve_tol(args: argparse.Namespace, config: dict) -> float:
    if getattr(args, "tol", None) is not None:
        return args.tol
    if config.get("tol") is not None:
        return float(config["tol"])
    tolerances = config.get("tolerances") or {}
    if isinstance(tolerances, dict) and tolerances.get("solver") is not None:
        return float(tolerances["solver"])
    return 1e-13


def _resolve_params(args: argparse.Namespace, config: dict, required: bool = True) -> Optional[GameParams]:
    raw = _resolve(args, config, "p")
    if raw is None:
        if required:
            raise ValueError("coin probabilities are required (--p p0,p1,p2,p3)")
        return None
    if isinstance(raw, str):
        raw = _parse_p(raw)
    return GameParams.from_iterable(raw)


def _resolve_scheduler(args: argparse.Namespace, config: dict) -> SchedulerSpec:
    pure = _resolve(args, config, "pure")
    r = _resolve(args, config, "r")
    s = _resolve(args, config, "s")
    gamma = _resolve(args, config, "gamma")
    if pure is not None:
        return PureGame(pure)
    if r is not None or s is not None:
        if r is None or s is None:
            raise ValueError("periodic patterns need both --r and --s")
        return PeriodicPattern(int(r), int(s))
    if gamma is not None:
        return RandomMixture(float(gamma))
    raise ValueError("pick a scheduler: --gamma, --r/--s, or --pure")


def _scheduler_fields(sched: SchedulerSpec) -> dict:
    return {
        "gamma": sched.gamma if isinstance(sched, RandomMixture) else None,
        "r": sched.r if isinstance(sched, PeriodicPattern) else None,
        "s": sched.s if isinstance(sched, PeriodicPattern) else None,
        "pure": sched.game if isinstance(sched, PureGame) else None,
    }


# -- output plumbing -----------------------------------------------------------


def _csv_text(columns: Sequence[str], rows: Sequence[dict]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer)
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_fmt_cell(row.get(col)) for col in columns])
    return buffer.getvalue()


def _manifest(command: str, params: dict, wall_clock: float, outputs: list[str]) -> dict:
    return {
        "manifest_version": 1,
        "tool": _TOOL,
        "version": __version__,
        "command": command,
        "params": params,
        "created_utc": datetime.now(timezone.utc).isoformat(),
        "wall_clock_s": wall_clock,
        "outputs": outputs,
    }


def _envelope(command: str, result: dict, manifest: dict) -> dict:
    return {
        "schema_version": _SCHEMA_VERSION,
        "tool": _TOOL,
        "version": __version__,
        "command": command,
        "result": result,
        "manifest": manifest,
    }


def _emit(
    command: str,
    fmt: str,
    out: Optional[str],
    resolved: dict,
    wall_clock: float,
    result: dict,
    columns: Optional[Sequence[str]] = None,
    rows: Optional[Sequence[dict]] = None,
) -> None:
    outputs = [out] if out else []
    manifest = _manifest(command, resolved, wall_clock, outputs)
    if fmt == "csv":
        if columns is None:
            raise ValueError(f"{command} has no CSV form; use --format json")
        text = _csv_text(columns, rows or [])
        if out:
            with open(out, "w", encoding="utf-8", newline="") as handle:
                handle.write(text)
            with open(out + ".manifest.json", "w", encoding="utf-8") as handle:
                json.dump(manifest, handle, indent=2)
                handle.write("\n")
        else:
            sys.stdout.write(text)
    else:
        payload = _envelope(command, result, manifest)
        text = json.dumps(payload, indent=2) + "\n"
        if out:
            with open(out, "w", encoding="utf-8") as handle:
                handle.write(text)
        else:
            sys.stdout.write(text)


# -- subcommands ----------------------------------------------------------------


def _cmd_exact_mean(args: argparse.Namespace) -> int:
    config = _load_config(args.config, "exact-mean")
    n_raw = _resolve(args, config, "n")
    if n_raw is None:
        raise ValueError("--n is required")
    n = int(n_raw)
    params = _resolve_params(args, config)
    sched = _resolve_scheduler(args, config)
    tol = _resolve_tol(args, config)
    max_iters = int(_resolve(args, config, "max_iters", 10 ** 6))
    fmt = _resolve(args, config, "format", "csv")

    start = time.perf_counter()
    profit = mean_profit(n, sched, params, tol=tol, max_iters=max_iters)
    wall = time.perf_counter() - start

    fields = _scheduler_fields(sched)
    resolved = {
        "n": n,
        **fields,
        "p": list(params.as_tuple()),
        "tol": tol,
        "max_iters": max_iters,
        "format": fmt,
    }
    p0, p1, p2, p3 = params.as_tuple()
    row = {
        "n": n,
        "scheduler": profit.scheduler,
        "gamma": fields["gamma"],
        "r": fields["r"],
        "s": fields["s"],
        "p0": p0,
        "p1": p1,
        "p2": p2,
        "p3": p3,
        "mu": profit.value,
        "solver_residual": profit.solver_residual,
        "formula_delta": profit.formula_delta,
    }
    result = {
        "n": n,
        "scheduler": profit.scheduler,
        "p": [p0, p1, p2, p3],
        "mu": profit.value,
        "solver_residual": profit.solver_residual,
        "iterations": profit.iterations,
        "formula_delta": profit.formula_delta,
    }
    columns = list(row.keys())
    _emit("exact-mean", fmt, args.out, resolved, wall, result, columns, [row])
    return 0


def _cmd_ergodicity(args: argparse.Namespace) -> int:
    config = _load_config(args.config, "ergodicity")
    gamma_raw = _resolve(args, config, "gamma")
    if gamma_raw is None:
        raise ValueError("--gamma is required (0 tests the coin game alone)")
    gamma = float(gamma_raw)
    params = _resolve_params(args, config)

    start = time.perf_counter()
    if gamma == 0.0:
        report = coin_game_ergodicity(params)
    else:
        report = mixture_ergodicity(gamma, params)
    m_delta = abs(report.M - influence_sum_bruteforce(gamma, params))
    eps_delta = abs(report.epsilon - min_rate_sum_bruteforce(gamma, params))
    wall = time.perf_counter() - start

    resolved = {"gamma": gamma, "p": list(params.as_tuple())}
    result = {
        "gamma": gamma,
        "p": list(params.as_tuple()),
        "M": report.M,
        "epsilon": report.epsilon,
        "lhs": report.lhs,
        "ergodic": report.ergodic,
        "margin": report.margin,
        "M_check_delta": m_delta,
        "epsilon_check_delta": eps_delta,
    }
    _emit("ergodicity", "json", args.out, resolved, wall, result)
    return 0 if m_delta <= 1e-12 and eps_delta == 0.0 else 1


def _cmd_volume(args: argparse.Namespace) -> int:
    config = _load_config(args.config, "volume")
    gamma_raw = _resolve(args, config, "gamma")
    if gamma_raw is None:
        raise ValueError("--gamma is required")
    gamma = float(gamma_raw)
    constraint = _resolve(args, config, "constraint", "none")
    samples = int(float(_resolve(args, config, "samples", 10 ** 6)))
    seed = int(_resolve(args, config, "seed", 0))
    threads = int(_resolve(args, config, "threads", os.cpu_count() or 1))
    fmt = _resolve(args, config, "format", "json")

    start = time.perf_counter()
    estimate = volume_estimate(gamma, constraint, samples, seed, threads)
    wall = time.perf_counter() - start

    resolved = {
        "gamma": gamma,
        "constraint": constraint,
        "samples": samples,
        "seed": seed,
        "threads": threads,
        "format": fmt,
    }
    result = {
        "gamma": gamma,
        "constraint": constraint,
        "samples": samples,
        "seed": seed,
        "estimate": estimate.estimate,
        "stderr": estimate.stderr,
    }
    row = dict(result)
    _emit("volume", fmt, args.out, resolved, wall, result, list(row.keys()), [row])
    return 0


def _cmd_simulate(args: argparse.Namespace) -> int:
    config = _load_config(args.config, "simulate")
    n_raw = _resolve(args, config, "n")
    if n_raw is None:
        raise ValueError("--n is required")
    n = int(float(n_raw))
    params = _resolve_params(args, config)
    sched = _resolve_scheduler(args, config)
    turns = int(float(_resolve(args, config, "turns", 10 ** 6)))
    burnin_raw = _resolve(args, config, "burnin")
    burnin = None if burnin_raw is None else int(float(burnin_raw))
    seed = int(_resolve(args, config, "seed", 0))
    fmt = _resolve(args, config, "format", "json")

    cfg = SimConfig(n, sched, params, turns, burnin, seed)
    start = time.perf_counter()
    sim = simulate(cfg)
    wall = time.perf_counter() - start

    fields = _scheduler_fields(sched)
    resolved = {
        "n": n,
        **fields,
        "p": list(params.as_tuple()),
        "turns": turns,
        "burnin": cfg.burnin,
        "seed": seed,
        "format": fmt,
    }
    result = {
        "n": n,
        "scheduler": scheduler_label(sched),
        "p": list(params.as_tuple()),
        "turns": turns,
        "burnin": cfg.burnin,
        "seed": seed,
        "mu_hat": sim.mu_hat,
        "ci_halfwidth": sim.ci_halfwidth,
        "pair_marginal": list(sim.pair_marginal_hat.as_flat()),
        "pair_spatial": list(sim.pair_spatial_hat.as_flat()),
        "pair_ci": [float(v) for v in sim.pair_ci_halfwidth.reshape(-1)],
        "turns_used": sim.turns_used,
    }
    p0, p1, p2, p3 = params.as_tuple()
    pm = sim.pair_marginal_hat.as_flat()
    ps = sim.pair_spatial_hat.as_flat()
    row = {
        "n": n,
        "scheduler": scheduler_label(sched),
        "gamma": fields["gamma"],
        "r": fields["r"],
        "s": fields["s"],
        "p0": p0,
        "p1": p1,
        "p2": p2,
        "p3": p3,
        "turns": turns,
        "burnin": cfg.burnin,
        "seed": seed,
        "mu_hat": sim.mu_hat,
        "ci_halfwidth": sim.ci_halfwidth,
        "pm00": pm[0],
        "pm01": pm[1],
        "pm10": pm[2],
        "pm11": pm[3],
        "ps00": ps[0],
        "ps01": ps[1],
        "ps10": ps[2],
        "ps11": ps[3],
        "turns_used": sim.turns_used,
    }
    _emit("simulate", fmt, args.out, resolved, wall, result, list(row.keys()), [row])
    return 0


def _cmd_scan(args: argparse.Namespace) -> int:
    config = _load_config(args.config, "scan")
    grid_raw = _resolve(args, config, "grid")
    if grid_raw is None:
        gamma = _resolve(args, config, "gamma")
        params = _resolve_params(args, config, required=False)
        if gamma is None or params is None:
            raise ValueError("provide --grid (or config grid), or --gamma with --p")
        grid = [[float(gamma), *params.as_tuple()]]
    else:
        grid = _parse_grid(grid_raw) if isinstance(grid_raw, str) else [
            [float(v) for v in point] for point in grid_raw
        ]
    n_raw = _resolve(args, config, "n")
    if n_raw is None:
        raise ValueError("--n is required")
    n = int(float(n_raw))
    turns = int(float(_resolve(args, config, "turns", 10 ** 6)))
    burnin_raw = _resolve(args, config, "burnin")
    burnin = None if burnin_raw is None else int(float(burnin_raw))
    seed = int(_resolve(args, config, "seed", 0))
    fmt = _resolve(args, config, "format", "csv")

    points = [(point[0], GameParams.from_iterable(point[1:])) for point in grid]
    start = time.perf_counter()
    records = parrondo_scan(points, n=n, turns=turns, seed=seed, burnin=burnin)
    wall = time.perf_counter() - start

    resolved = {
        "grid": grid,
        "n": n,
        "turns": turns,
        "burnin": burnin,
        "seed": seed,
        "format": fmt,
    }
    rows = []
    for rec in records:
        p0, p1, p2, p3 = rec.params.as_tuple()
        rows.append(
            {
                "gamma": rec.gamma,
                "p0": p0,
                "p1": p1,
                "p2": p2,
                "p3": p3,
                "mu_b": rec.mu_b,
                "ci_b": rec.ci_b,
                "mu_c": rec.mu_c,
                "ci_c": rec.ci_c,
                "effect": rec.effect,
                "margin": rec.margin,
                "error": rec.error,
            }
        )
    columns = list(rows[0].keys())
    result = {"columns": columns, "rows": rows}
    _emit("scan", fmt, args.out, resolved, wall, result, columns, rows)
    return 0


def _cmd_convergence(args: argparse.Namespace) -> int:
    config = _load_config(args.config, "convergence")
    n_raw = _resolve(args, config, "n")
    if n_raw is None:
        raise ValueError("--n is required (single value, list, or range a..b)")
    n_values = _parse_n_list(n_raw) if isinstance(n_raw, str) else (
        [int(n_raw)] if isinstance(n_raw, int) else [int(v) for v in n_raw]
    )
    params = _resolve_params(args, config)
    sched = _resolve_scheduler(args, config)
    tol = _resolve_tol(args, config)
    max_iters = int(_resolve(args, config, "max_iters", 10 ** 6))
    fmt = _resolve(args, config, "format", "csv")

    start = time.perf_counter()
    table = convergence_table(params, sched, n_values, tol=tol, max_iters=max_iters)
    wall = time.perf_counter() - start

    fields = _scheduler_fields(sched)
    resolved = {
        "n": n_raw if isinstance(n_raw, str) else n_values,
        **fields,
        "p": list(params.as_tuple()),
        "tol": tol,
        "max_iters": max_iters,
        "format": fmt,
    }
    label = scheduler_label(sched)
    rows = [
        {
            "n": row.n,
            "scheduler": label,
            "mu": row.value,
            "delta_prev": row.delta_prev,
            "solver_residual": row.solver_residual,
            "error": row.error,
        }
        for row in table
    ]
    columns = ["n", "scheduler", "mu", "delta_prev", "solver_residual", "error"]
    result = {"columns": columns, "rows": rows}
    _emit("convergence", fmt, args.out, resolved, wall, result, columns, rows)
    return 0


def _cmd_generator_check(args: argparse.Namespace) -> int:
    config = _load_config(args.config, "generator-check")
    game = _resolve(args, config, "game")
    if game not in ("duel", "coin", "mixture", "periodic"):
        raise ValueError("--game must be duel, coin, mixture, or periodic")
    k = int(_resolve(args, config, "k", 1))
    n_raw = _resolve(args, config, "n")
    if n_raw is None:
        raise ValueError("--n is required (single value, list, or range a..b)")
    n_values = _parse_n_list(n_raw) if isinstance(n_raw, str) else (
        [int(n_raw)] if isinstance(n_raw, int) else [int(v) for v in n_raw]
    )
    seed = int(_resolve(args, config, "seed", 0))
    params = _resolve_params(args, config, required=game != "duel")
    if params is None:
        params = GameParams.fair()
    fmt = _resolve(args, config, "format", "csv")

    f = CylinderFunction.random(k, seed=seed)
    start = time.perf_counter()
    rows = []
    if game == "periodic":
        r = _resolve(args, config, "r")
        s = _resolve(args, config, "s")
        if r is None or s is None:
            raise ValueError("--game periodic needs --r and --s")
        label = scheduler_label(PeriodicPattern(int(r), int(s)))
        for n in n_values:
            residual = periodic_residual(f, n, int(r), int(s), params)
            rows.append(
                {"game": label, "k": k, "n": n, "residual": residual, "kind": "periodic"}
            )
    else:
        if game == "mixture":
            gamma_raw = _resolve(args, config, "gamma")
            if gamma_raw is None:
                raise ValueError("--game mixture needs --gamma")
            sched: SchedulerSpec = RandomMixture(float(gamma_raw))
        else:
            sched = PureGame(game)
        label = scheduler_label(sched)
        for n in n_values:
            residual = embedding_residual(f, n, sched, params)
            rows.append(
                {"game": label, "k": k, "n": n, "residual": residual, "kind": "lemma"}
            )
    wall = time.perf_counter() - start

    fields: dict = {"game": game, "k": k, "seed": seed, "p": list(params.as_tuple())}
    if game == "mixture":
        fields["gamma"] = float(_resolve(args, config, "gamma"))
    if game == "periodic":
        fields["r"] = int(_resolve(args, config, "r"))
        fields["s"] = int(_resolve(args, config, "s"))
    resolved = {
        "n": n_raw if isinstance(n_raw, str) else n_values,
        **fields,
        "format": fmt,
    }
    columns = ["game", "k", "n", "residual", "kind"]
    result = {"columns": columns, "rows": rows}
    _emit("generator-check", fmt, args.out, resolved, wall, result, columns, rows)
    return 0


# -- parser ----------------------------------------------------------------------


def _add_common(sub: argparse.ArgumentParser, fmt_choices: bool = True) -> None:
    sub.add_argument("--config", help="JSON config file or a previous run's manifest")
    sub.add_argument("--out", help="output file (default: stdout)")
    if fmt_choices:
        sub.add_argument("--format", choices=("csv", "json"), default=None)


def _add_scheduler(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--gamma", type=float, default=None, help="mixture weight of the duel game")
    sub.add_argument("--r", type=int, default=None, help="duel turns per periodic cycle")
    sub.add_argument("--s", type=int, default=None, help="coin turns per periodic cycle")
    sub.add_argument("--pure", choices=("duel", "coin"), default=None, help="single repeated game")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog=_TOOL,
        description="Exact and Monte Carlo analysis of spatially dependent "
        "Parrondo games on a ring.",
    )
    parser.add_argument("--version", action="version", version=f"{_TOOL} {__version__}")
    subs = parser.add_subparsers(dest="command", required=True)

    sub = subs.add_parser("exact-mean", help="exact equilibrium mean profit per turn")
    sub.add_argument("--n", type=int, default=None, help="ring size")
    _add_scheduler(sub)
    sub.add_argument("--p", type=str, default=None, help="p0,p1,p2,p3")
    sub.add_argument("--tol", type=float, default=None, help="solver residual target")
    sub.add_argument("--max-iters", type=int, default=None, dest="max_iters")
    _add_common(sub)
    sub.set_defaults(func=_cmd_exact_mean)

    sub = subs.add_parser("ergodicity", help="basic-inequality report (JSON)")
    sub.add_argument("--gamma", type=float, default=None, help="0 tests the coin game alone")
    sub.add_argument("--p", type=str, default=None, help="p0,p1,p2,p3")
    _add_common(sub, fmt_choices=False)
    sub.set_defaults(func=_cmd_ergodicity)

    sub = subs.add_parser("volume", help="ergodic parameter-space volume estimate")
    sub.add_argument("--gamma", type=float, default=None)
    sub.add_argument("--constraint", choices=("none", "p1_eq_p2"), default=None)
    sub.add_argument("--samples", type=str, default=None, help="sample count (1e6 ok)")
    sub.add_argument("--seed", type=int, default=None)
    sub.add_argument("--threads", type=int, default=None)
    _add_common(sub)
    sub.set_defaults(func=_cmd_volume)

    sub = subs.add_parser("simulate", help="Monte Carlo profit estimate on a large ring")
    sub.add_argument("--n", type=str, default=None, help="ring size (up to 1e7)")
    _add_scheduler(sub)
    sub.add_argument("--p", type=str, default=None, help="p0,p1,p2,p3")
    sub.add_argument("--turns", type=str, default=None, help="total turns (1e7 ok)")
    sub.add_argument("--burnin", type=str, default=None, help="discarded turns")
    sub.add_argument("--seed", type=int, default=None)
    _add_common(sub)
    sub.set_defaults(func=_cmd_simulate)

    sub = subs.add_parser("scan", help="Parrondo-effect scan over (gamma, p) points")
    sub.add_argument("--grid", type=str, default=None, help="g,p0,p1,p2,p3[;g,p0,...]")
    sub.add_argument("--gamma", type=float, default=None, help="single-point alternative to --grid")
    sub.add_argument("--p", type=str, default=None)
    sub.add_argument("--n", type=str, default=None)
    sub.add_argument("--turns", type=str, default=None)
    sub.add_argument("--burnin", type=str, default=None)
    sub.add_argument("--seed", type=int, default=None)
    _add_common(sub)
    sub.set_defaults(func=_cmd_scan)

    sub = subs.add_parser("convergence", help="exact mean profit over a range of ring sizes")
    sub.add_argument("--n", type=str, default=None, help="e.g. 6..14 or 6,8,10")
    _add_scheduler(sub)
    sub.add_argument("--p", type=str, default=None)
    sub.add_argument("--tol", type=float, default=None)
    sub.add_argument("--max-iters", type=int, default=None, dest="max_iters")
    _add_common(sub)
    sub.set_defaults(func=_cmd_convergence)

    sub = subs.add_parser(
        "generator-check",
        help="continuum-generator embedding residuals on finite rings",
    )
    sub.add_argument("--game", choices=("duel", "coin", "mixture", "periodic"), default=None)
    sub.add_argument("--k", type=int, default=None, help="cylinder function half-width")
    sub.add_argument("--n", type=str, default=None, help="e.g. 8 or 6..14")
    sub.add_argument("--gamma", type=float, default=None)
    sub.add_argument("--r", type=int, default=None)
    sub.add_argument("--s", type=int, default=None)
    sub.add_argument("--p", type=str, default=None)
    sub.add_argument("--seed", type=int, default=None)
    _add_common(sub)
    sub.set_defaults(func=_cmd_generator_check)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except NotConverged as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (ValueError, TypeError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except RuntimeError as exc:
        print(f"internal check failed: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
