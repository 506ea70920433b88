"""Command-line front end.

Subcommands:
  run             solve one function and write grid.csv, report.json, config.json
  compare         solve with dp and a learner, report error stats
  list-functions  show the catalog

Exit codes: 0 success, 1 invariant violation in a deterministic solve,
2 configuration error. CSV rows follow flat state-id order (row-major, axis 1
slowest); floats carry 17 significant digits. --config points at a JSON file
of flag defaults; explicit flags win over the file, the file over built-ins.
The qvi solver is deterministic, so its values land in the V_dp column.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path
from typing import Any

import numpy as np

from . import dp as dp_mod
from . import functions as fns
from . import hull, qlearning, validation
from .errors import ConfigurationError

HARD_TOL = 1e-9  # dominance / convexity / min-gap gate for deterministic solves

SOLVERS = ("dp", "qvi", "sync-ql", "async-ql", "all")

DEFAULTS: dict[str, Any] = {
    "points": None,  # per-arity default chosen later
    "domain": None,
    "steps": 1_000_000,
    "L": None,
    "n0": 1_000_000.0,
    "seed": 0,
    "margin": 0.1,
    "oracle": False,
    "out": "out",
    "threads": 1,
}


def _parse_domain(text: str) -> tuple[tuple[float, float], ...]:
    axes = []
    for part in text.split(","):
        pieces = part.split(":")
        if len(pieces) != 2:
            raise ConfigurationError(f"domain axis {part!r} is not lo:hi")
        try:
            lo, hi = float(pieces[0]), float(pieces[1])
        except ValueError as exc:
            raise ConfigurationError(f"domain axis {part!r} is not numeric") from exc
        axes.append((lo, hi))
    return tuple(axes)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cvxenv",
        description="Discrete convex envelopes by optimal stopping on a lattice.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--function", required=True, help="catalog function name")
        p.add_argument("--points", type=int, default=None,
                       help="points per axis, odd and >= 3 (default 201 for 1D, 101 for 2D)")
        p.add_argument("--domain", type=str, default=None, metavar="lo:hi[,lo:hi]",
                       help="override the default domain, one range per axis")
        p.add_argument("--steps", type=int, default=None, help="learner step budget")
        p.add_argument("--L", type=float, default=None,
                       help="high initialization for learners (default max f + 1)")
        p.add_argument("--n0", type=float, default=None, help="step-size schedule scale")
        p.add_argument("--seed", type=int, default=None, help="rng seed for learners")
        p.add_argument("--margin", type=float, default=None,
                       help="boundary margin for interior error stats")
        p.add_argument("--out", type=str, default=None, help="output directory")
        p.add_argument("--threads", type=int, default=None,
                       help="solver thread count (results are thread-invariant)")
        p.add_argument("--config", type=str, default=None, help="JSON file of flag defaults")

    run_p = sub.add_parser("run", help="solve one function and write outputs")
    add_common(run_p)
    run_p.add_argument("--solver", choices=SOLVERS, default=None,
                       help="which solver(s) to run (default dp)")
    run_p.add_argument("--oracle", action="store_true", default=None,
                       help="also compute the geometric hull envelope column")

    cmp_p = sub.add_parser("compare", help="dp vs a learner vs the hull oracle")
    add_common(cmp_p)
    cmp_p.add_argument("--solver", choices=("sync-ql", "async-ql"), default=None,
                       help="learner to compare against dp (default async-ql)")

    sub.add_parser("list-functions", help="show the function catalog")
    return parser


def _resolve(args: argparse.Namespace) -> dict[str, Any]:
    resolved = dict(DEFAULTS)
    if getattr(args, "config", None):
        path = Path(args.config)
        try:
            loaded = json.loads(path.read_text())
        except OSError as exc:
            raise ConfigurationError(f"cannot read config file {path}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ConfigurationError(f"config file {path} is not valid JSON: {exc}") from exc
        if not isinstance(loaded, dict):
            raise ConfigurationError("config file must hold a JSON object")
        unknown = set(loaded) - set(DEFAULTS) - {"function", "solver"}
        if unknown:
            raise ConfigurationError(f"unknown config keys: {sorted(unknown)}")
        resolved.update(loaded)
    for key in DEFAULTS:
        value = getattr(args, key.replace("-", "_"), None)
        if value is not None:
            resolved[key] = value
    resolved["function"] = args.function
    if getattr(args, "solver", None) is not None:
        resolved["solver"] = args.solver
    elif "solver" not in resolved:
        resolved["solver"] = "async-ql" if args.command == "compare" else "dp"
    if args.command == "compare" and resolved["solver"] not in ("sync-ql", "async-ql"):
        raise ConfigurationError("compare needs a learner solver (sync-ql or async-ql)")
    if resolved["solver"] not in SOLVERS:
        raise ConfigurationError(f"unknown solver {resolved['solver']!r}")
    if isinstance(resolved["domain"], str):
        resolved["domain"] = _parse_domain(resolved["domain"])
    elif isinstance(resolved["domain"], list):
        resolved["domain"] = tuple(tuple(float(v) for v in ax) for ax in resolved["domain"])
    resolved["oracle"] = bool(resolved["oracle"])
    if resolved["threads"] < 1:
        raise ConfigurationError("threads must be >= 1")
    if not (0.0 <= resolved["margin"] < 1.0):
        raise ConfigurationError(f"margin must be in [0, 1), got {resolved['margin']}")
    return resolved


def _fmt(value: float) -> str:
    return f"{value:.17g}"


def _write_csv(path: Path, columns: list[tuple[str, np.ndarray]]) -> None:
    header = ",".join(name for name, _ in columns)
    arrays = [np.asarray(col, dtype=float) for _, col in columns]
    lines = [header]
    for i in range(arrays[0].size):
        lines.append(",".join(_fmt(a[i]) for a in arrays))
    path.write_text("\n".join(lines) + "\n")


def _learn_cfg(cfg: dict[str, Any]) -> qlearning.LearnConfig:
    return qlearning.LearnConfig(
        total_steps=int(cfg["steps"]),
        L=cfg["L"],
        n0=float(cfg["n0"]),
        seed=int(cfg["seed"]),
    )


def _deterministic_block(grid, f, result) -> dict[str, Any]:
    V = result.values if hasattr(result, "values") else dp_mod.extract_value(result.q)
    return {
        "sweeps": result.sweeps,
        "residual": result.residual,
        "converged": result.converged,
        "dominance_defect": validation.dominance_defect(V, f),
        "convexity_defect": validation.convexity_defect(grid, V),
        "min_gap": validation.min_gap(V, f),
    }


def _gate(block: dict[str, Any]) -> list[str]:
    problems = []
    if not block["converged"]:
        problems.append("did not converge")
    for key in ("dominance_defect", "convexity_defect", "min_gap"):
        if block[key] > HARD_TOL:
            problems.append(f"{key}={block[key]:.3e} exceeds {HARD_TOL}")
    return problems


def _execute(cfg: dict[str, Any], command: str) -> int:
    t0 = time.perf_counter()
    tf = fns.get_function(cfg["function"])
    domain = fns.resolve_domain(tf, cfg["domain"])
    grid = fns.grid_for(tf, cfg["points"], domain)
    f = fns.sample_on_grid(tf, grid, domain)
    coords = fns.domain_coords(grid, domain)

    out_dir = Path(cfg["out"])
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
        probe = out_dir / ".write-probe"
        probe.write_text("")
        probe.unlink()
    except OSError as exc:
        raise ConfigurationError(f"output directory {out_dir} is not writable: {exc}") from exc

    solver = cfg["solver"]
    want_dp = command == "compare" or solver in ("dp", "all")
    want_qvi = solver in ("qvi", "all")
    want_learner = command == "compare" or solver in ("sync-ql", "async-ql", "all")
    learner_kind = solver if solver in ("sync-ql", "async-ql") else "async-ql"
    want_oracle = command == "compare" or cfg["oracle"]

    solve_cfg = dp_mod.SolveConfig(threads=int(cfg["threads"]))
    report = validation.RunReport(
        function=tf.name,
        d=grid.spec.d,
        M=grid.spec.M,
        delta=grid.spec.delta,
        points_per_axis=grid.spec.points_per_axis,
        domain=[list(ax) for ax in domain],
        solver=solver,
        seed=int(cfg["seed"]),
        margin=float(cfg["margin"]),
    )

    failures: list[str] = []
    V_dp = V_ql = V_oracle = None

    if want_dp:
        res = dp_mod.value_iteration(grid, f, solve_cfg)
        V_dp = res.values
        block = _deterministic_block(grid, f, res)
        block["monotone_violations"] = res.monotone_violations
        report.solvers["dp"] = block
        failures += [f"dp: {p}" for p in _gate(block)]

    if want_qvi:
        qres = dp_mod.q_value_iteration(grid, f, solve_cfg)
        qv = dp_mod.extract_value(qres.q)
        block = _deterministic_block(grid, f, qres)
        if V_dp is not None:
            block["vs_dp_sup"] = float(np.abs(qv - V_dp).max())
        report.solvers["qvi"] = block
        failures += [f"qvi: {p}" for p in _gate(block)]
        if V_dp is None:
            V_dp = qv

    if want_learner:
        learn_cfg = _learn_cfg(cfg)
        runner = (qlearning.synchronous_q_learning if learner_kind == "sync-ql"
                  else qlearning.asynchronous_q_learning)
        lres = runner(grid, f, learn_cfg)
        V_ql = dp_mod.extract_value(lres.q)
        report.solvers[learner_kind.replace("-", "_")] = {
            "steps": lres.stats.steps,
            "episodes": lres.stats.episodes,
            "coverage": lres.stats.coverage,
            "q_min_seen": lres.stats.q_min_seen,
            "q_max_seen": lres.stats.q_max_seen,
            "dominance_defect": validation.dominance_defect(V_ql, f),
            "min_gap": validation.min_gap(V_ql, f),
        }

    if want_oracle:
        V_oracle = hull.envelope_on_grid(grid, f, coords)

    margin = float(cfg["margin"])
    if V_dp is not None and V_oracle is not None:
        stats = validation.interior_error(grid, V_dp, V_oracle, margin)
        report.comparisons.update({
            "dp_vs_oracle_sup": stats.sup_abs,
            "dp_vs_oracle_mean": stats.mean_abs,
            "dp_vs_oracle_signed_min": stats.signed_min,
            "dp_vs_oracle_signed_max": stats.signed_max,
        })
    if V_dp is not None and V_ql is not None:
        stats = validation.interior_error(grid, V_ql, V_dp, margin)
        report.comparisons.update({
            "dp_vs_learning_sup": stats.sup_abs,
            "dp_vs_learning_mean": stats.mean_abs,
        })

    config_echo = dict(cfg)
    config_echo["function"] = tf.name
    config_echo["points"] = grid.spec.points_per_axis
    config_echo["domain"] = [list(ax) for ax in domain]
    config_echo["command"] = command
    (out_dir / "config.json").write_text(
        json.dumps(config_echo, indent=2, sort_keys=True, default=float) + "\n"
    )

    if command == "run":
        columns: list[tuple[str, np.ndarray]] = [
            (f"x{i + 1}", coords[:, i]) for i in range(grid.spec.d)
        ]
        columns.append(("f", f))
        if V_dp is not None:
            columns.append(("V_dp", V_dp))
        if V_ql is not None:
            columns.append(("V_ql", V_ql))
        if V_oracle is not None:
            columns.append(("V_oracle", V_oracle))
        _write_csv(out_dir / "grid.csv", columns)

    report.wall_time_s = time.perf_counter() - t0
    (out_dir / "report.json").write_text(report.to_json())

    for name, block in report.solvers.items():
        keys = ("sweeps", "residual") if "sweeps" in block else ("steps", "coverage")
        summary = " ".join(f"{k}={block[k]:.6g}" if isinstance(block[k], float)
                           else f"{k}={block[k]}" for k in keys)
        print(f"{tf.name} [{name}] {summary}")
    for key, value in sorted(report.comparisons.items()):
        print(f"{key} = {value:.6e}")
    print(f"outputs in {out_dir}/")

    if failures:
        for item in failures:
            print(f"invariant violation: {item}", file=sys.stderr)
        return 1
    return 0


def _list_functions() -> int:
    rows = [(tf.name, tf.arity, tf.default_domain) for tf in fns.catalog()]
    name_w = max(len(r[0]) for r in rows)
    print(f"{'name':<{name_w}}  arity  default domain")
    for name, arity, domain in rows:
        dom = " x ".join(f"[{lo:g}, {hi:g}]" for lo, hi in domain)
        print(f"{name:<{name_w}}  {arity:>5}  {dom}")
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "list-functions":
            return _list_functions()
        cfg = _resolve(args)
        return _execute(cfg, args.command)
    except ConfigurationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
