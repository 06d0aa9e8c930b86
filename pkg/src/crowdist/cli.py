"""Experiment runner: seeded runs, sweeps, maximin queries, and dump analysis.

Subcommands: ``run``, ``sweep``, ``maximin``, ``analyze``. Parameters may
come from flags or from a flat ``key=value`` config file (one pair per line,
``#`` comments); flags override the file. Every output embeds the resolved
manifest, so re-running any manifest reproduces its outputs byte for byte.

Exit codes: 0 success, 2 usage or malformed input, 3 I/O, 4 numeric/capacity.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import numpy as np

from .crowding import RANGE_NORMALIZED, RAW_SUM, CrowdingPolicy
from .engine import (BEST_CONTRIBUTION, MU_PLUS_MU, MU_PLUS_ONE, WORST_CD,
                     RunConfig, run)
from .errors import CapacityError, CsvParseError
from .io import json_ready, read_population_csv, write_json, write_population_csv
from .maximin import (LinePlacement, closed_form_value, grid_oracle,
                      is_optimal_placement, line_crowding, maximin_solve,
                      optimal_placement)
from .metrics import (cd_histogram, duplicate_extremes, gap_statistics,
                      population_min_finite_cd, project_to_line)
from .population import Population
from .problems import PROBLEM_NAMES, ProblemSpec, make_problem, normalize_to_unit_front
from .variation import VariationConfig

OUT_ENV_VAR = "CROWDIST_OUT"

_SCHEME_ALIASES = {
    "mumu": MU_PLUS_MU, "mu-plus-mu": MU_PLUS_MU,
    "mu1": MU_PLUS_ONE, "mu-plus-one": MU_PLUS_ONE,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "config", None):
        try:
            _apply_config_file(parser, args.config)
        except OSError as exc:
            print(f"I/O error: {exc}", file=sys.stderr)
            return 3
        except ValueError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
        args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (CsvParseError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return 3
    except (CapacityError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="crowdist",
        description="NSGA-II generation-update schemes and maximin line placements.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="execute one seeded run")
    _add_run_flags(p_run)
    p_run.set_defaults(func=cmd_run)

    p_sweep = sub.add_parser("sweep", help="execute a multi-seed sweep")
    _add_run_flags(p_sweep)
    p_sweep.add_argument("--runs", type=int, default=10, help="number of seeds")
    p_sweep.add_argument("--paired", action="store_true",
                         help="run both schemes per seed with a matched evaluation budget")
    p_sweep.add_argument("--cv-threshold", type=float, default=0.25,
                         help="gap CV at or below which a run counts as uniform")
    p_sweep.add_argument("--jobs", type=int, default=1, help="concurrent runs")
    p_sweep.set_defaults(func=cmd_sweep)

    p_max = sub.add_parser("maximin", help="optimal placement on the line front")
    p_max.add_argument("--n", type=int, required=True, help="total solution count (>= 3)")
    p_max.add_argument("--method", choices=["closed", "bisect", "grid"], default="closed")
    p_max.add_argument("--resolution", type=float, default=0.01, help="grid step (grid method)")
    p_max.add_argument("--tol", type=float, default=1e-12, help="bisection tolerance")
    p_max.add_argument("--out", default=None, help="also write the result as JSON here")
    p_max.add_argument("--config", default=None, help="key=value defaults file; flags override")
    p_max.set_defaults(func=cmd_maximin)

    p_an = sub.add_parser("analyze", help="metric report for a population CSV")
    p_an.add_argument("csv", help="population CSV path")
    p_an.add_argument("--out", default=None, help="output JSON path (default: stdout)")
    p_an.add_argument("--eps-front", type=float, default=1e-3)
    p_an.add_argument("--dedup-eps", type=float, default=1e-6)
    p_an.add_argument("--extreme-eps", type=float, default=1e-3)
    p_an.add_argument("--bins", type=int, default=10)
    p_an.add_argument("--config", default=None, help="key=value defaults file; flags override")
    p_an.set_defaults(func=cmd_analyze)
    return parser


def _add_run_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--problem", choices=PROBLEM_NAMES, default="linefront")
    p.add_argument("--nvar", type=int, default=None, help="decision dimension")
    p.add_argument("--nobj", type=int, default=2, help="objective dimension (2 or 3)")
    p.add_argument("--pop", type=int, default=20, help="population size")
    p.add_argument("--scheme", choices=sorted(_SCHEME_ALIASES), default="mumu")
    p.add_argument("--removal", choices=[WORST_CD, BEST_CONTRIBUTION], default=WORST_CD)
    p.add_argument("--gens", type=int, default=None, help="generation budget (mu+mu)")
    p.add_argument("--offspring", type=int, default=None, help="offspring budget (mu+1)")
    p.add_argument("--evals", type=int, default=None, help="total evaluation budget")
    p.add_argument("--seed", type=int, default=0, help="base seed (unsigned 64-bit)")
    p.add_argument("--sbx-eta", type=float, default=20.0)
    p.add_argument("--sbx-prob", type=float, default=1.0)
    p.add_argument("--mut-eta", type=float, default=20.0)
    p.add_argument("--mut-prob", type=float, default=None, help="default 1/nvar")
    p.add_argument("--normalization", choices=[RAW_SUM, RANGE_NORMALIZED],
                   default=RANGE_NORMALIZED, help="crowding policy inside the engine")
    p.add_argument("--snapshot-every", type=int, default=None)
    p.add_argument("--eps-front", type=float, default=1e-3)
    p.add_argument("--dedup-eps", type=float, default=1e-6)
    p.add_argument("--extreme-eps", type=float, default=1e-3)
    p.add_argument("--bins", type=int, default=10)
    p.add_argument("--out", default=None,
                   help=f"output directory (default: ${OUT_ENV_VAR} or '.')")
    p.add_argument("--config", default=None, help="key=value defaults file; flags override")


def _apply_config_file(parser: argparse.ArgumentParser, config_path: str) -> None:
    """Install the config file's pairs as subcommand defaults (flags still win)."""
    pairs = parse_config_file(config_path)
    subparsers = parser._subparsers._group_actions[0].choices
    applied = set()
    for sub in subparsers.values():
        dests = {a.dest: a for a in sub._actions}
        overrides = {}
        for key, value in pairs.items():
            dest = key.replace("-", "_")
            if dest in dests:
                overrides[dest] = _coerce(value, dests[dest])
                applied.add(key)
        sub.set_defaults(**overrides)
    unknown = set(pairs) - applied - {"command"}
    if unknown:
        raise ValueError(f"config file: unknown keys {sorted(unknown)}")


def _coerce(value: str, action) -> object:
    if isinstance(action, argparse._StoreTrueAction):
        return value.lower() in ("1", "true", "yes")
    if action.type is int:
        return int(value)
    if action.type is float:
        return float(value)
    return value


def parse_config_file(path) -> dict[str, str]:
    """Flat key=value pairs, one per line; '#' starts a comment."""
    pairs: dict[str, str] = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected key=value, got {raw!r}")
        key, _, value = line.partition("=")
        pairs[key.strip()] = value.strip()
    return pairs


def _out_dir(args) -> Path:
    out = args.out or os.environ.get(OUT_ENV_VAR) or "."
    path = Path(out)
    path.mkdir(parents=True, exist_ok=True)
    return path


def _matched_evaluations(args) -> int:
    if args.evals is not None:
        return args.evals
    if args.gens is not None:
        return args.pop + args.gens * args.pop
    if args.offspring is not None:
        return args.pop + args.offspring
    raise ValueError("set one budget: --gens, --offspring, or --evals")


def _build_config(args, scheme: str, seed: int, evaluations_override=None) -> RunConfig:
    problem = make_problem(args.problem, args.nvar, args.nobj)
    variation = VariationConfig(
        bounds=problem.bounds,
        sbx_eta=args.sbx_eta,
        sbx_prob=args.sbx_prob,
        mut_eta=args.mut_eta,
        mut_prob=args.mut_prob,
    )
    gens, offspring, evals = args.gens, args.offspring, args.evals
    if evaluations_override is not None:
        gens, offspring, evals = None, None, evaluations_override
    if gens is None and offspring is None and evals is None:
        raise ValueError("set one budget: --gens, --offspring, or --evals")
    return RunConfig(
        problem=problem,
        pop_size=args.pop,
        seed=seed,
        scheme=scheme,
        removal=args.removal,
        generations=gens,
        offspring=offspring,
        evaluations=evals,
        variation=variation,
        normalization=args.normalization,
        snapshot_every=args.snapshot_every,
    )


def run_manifest(config: RunConfig, args) -> dict:
    var = config.variation
    budget_key, budget = (
        ("gens", config.generations) if config.generations is not None
        else ("offspring", config.offspring) if config.offspring is not None
        else ("evals", config.evaluations)
    )
    return {
        "problem": config.problem.name,
        "nvar": config.problem.n_var,
        "nobj": config.problem.n_obj,
        "pop": config.pop_size,
        "scheme": config.scheme,
        "removal": config.removal,
        budget_key: budget,
        "seed": config.seed,
        "sbx-eta": var.sbx_eta,
        "sbx-prob": var.sbx_prob,
        "mut-eta": var.mut_eta,
        "mut-prob": var.mutation_rate,
        "normalization": config.normalization,
        "eps-front": args.eps_front,
        "dedup-eps": args.dedup_eps,
        "extreme-eps": args.extreme_eps,
        "bins": args.bins,
    }


def _file_stem(config: RunConfig) -> str:
    scheme_short = "mu1" if config.scheme == MU_PLUS_ONE else "mumu"
    return f"{config.problem.name}_{scheme_short}_pop{config.pop_size}_seed{config.seed}"


def population_report(population: Population, problem: ProblemSpec, *,
                      eps_front: float = 1e-3, dedup_eps: float = 1e-6,
                      extreme_eps: float = 1e-3, bins: int = 10) -> dict:
    """Metric payload shared by run, sweep, and analyze outputs."""
    analysis_policy = CrowdingPolicy(normalization=RAW_SUM)
    hist = cd_histogram(population.objectives, analysis_policy, bins=bins)
    report: dict = {
        "pop_size": len(population),
        "min_finite_cd": population_min_finite_cd(population.objectives, analysis_policy),
        "cd_histogram": {
            "bin_edges": hist.bin_edges,
            "counts": hist.counts,
            "infinite_count": hist.infinite_count,
        },
        "gap_cv": None,
        "dup_at_extremes": None,
        "excluded_off_front": None,
    }
    if problem.n_obj == 2:
        normalized = np.stack(
            [normalize_to_unit_front(problem, f) for f in population.objectives]
        )
        ts, excluded = project_to_line(normalized, eps_front=eps_front)
        report["excluded_off_front"] = excluded
        report["dup_at_extremes"] = list(duplicate_extremes(ts, eps=extreme_eps))
        if ts.size >= 3:
            stats = gap_statistics(ts, dedup_eps=dedup_eps)
            report["gap_cv"] = stats.cv
        report.update(_optimality_verdict(ts, excluded, len(population)))
    return report


def _report_kwargs(args) -> dict:
    return {
        "eps_front": args.eps_front,
        "dedup_eps": args.dedup_eps,
        "extreme_eps": args.extreme_eps,
        "bins": args.bins,
    }


def _optimality_verdict(ts: np.ndarray, excluded: int, pop_size: int) -> dict:
    """Value-criterion check against the best achievable minimum crowding distance."""
    if pop_size < 3:
        return {"is_optimal": False, "optimal_value": None}
    verdict: dict = {"is_optimal": False, "optimal_value": closed_form_value(pop_size)}
    if excluded or ts.size != pop_size:
        return verdict
    if abs(ts[0]) > 1e-9 or abs(ts[-1] - 1.0) > 1e-9:
        return verdict
    placement = LinePlacement(tuple(ts[1:-1]))
    verdict["is_optimal"] = bool(is_optimal_placement(placement, pop_size, tol=1e-9))
    if placement.interior:
        verdict["min_line_cd"] = float(line_crowding(placement).min())
    else:
        verdict["min_line_cd"] = math.inf
    return verdict


def cmd_run(args) -> int:
    config = _build_config(args, _SCHEME_ALIASES[args.scheme], args.seed)
    record = run(config)
    out = _out_dir(args)
    manifest = run_manifest(config, args)
    stem = _file_stem(config)
    write_population_csv(out / f"{stem}.csv", record.population, manifest)
    payload = {
        "manifest": manifest,
        "evaluations": record.evaluations,
        "snapshots": [[s.evaluations, s.min_finite_cd, s.gap_cv] for s in record.snapshots],
        **population_report(record.population, config.problem, **_report_kwargs(args)),
    }
    write_json(out / f"{stem}_metrics.json", payload)
    print(f"wrote {out / (stem + '.csv')} and {out / (stem + '_metrics.json')}")
    return 0


def _sweep_worker(item) -> tuple[int, str, dict]:
    config, args_dict, out_dir = item
    args = argparse.Namespace(**args_dict)
    record = run(config)
    manifest = run_manifest(config, args)
    stem = _file_stem(config)
    write_population_csv(Path(out_dir) / f"{stem}.csv", record.population, manifest)
    report = population_report(record.population, config.problem, **_report_kwargs(args))
    report["seed"] = config.seed
    report["scheme"] = config.scheme
    report["evaluations"] = record.evaluations
    write_json(Path(out_dir) / f"{stem}_metrics.json", {"manifest": manifest, **report})
    return config.seed, config.scheme, report


def cmd_sweep(args) -> int:
    if args.runs < 1:
        raise ValueError("--runs must be >= 1")
    base_scheme = _SCHEME_ALIASES[args.scheme]
    seeds = [args.seed + k for k in range(args.runs)]
    out = _out_dir(args)

    schemes = (MU_PLUS_ONE, MU_PLUS_MU) if args.paired else (base_scheme,)
    jobs = []
    for seed in seeds:
        for scheme in schemes:
            override = _matched_evaluations(args) if args.paired else None
            jobs.append((_build_config(args, scheme, seed, override), vars(args), str(out)))

    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_sweep_worker, jobs))
    else:
        results = [_sweep_worker(item) for item in jobs]

    per_seed: dict[int, dict] = {seed: {} for seed in seeds}
    for seed, scheme, report in results:
        per_seed[seed][scheme] = report

    aggregate = {
        "manifest": run_manifest(jobs[0][0], args),
        "runs": args.runs,
        "schemes": list(schemes),
        "per_seed": {str(seed): per_seed[seed] for seed in seeds},
        "summary": _sweep_summary(per_seed, seeds, schemes, args),
    }
    stem = f"{args.problem}_pop{args.pop}_sweep"
    write_json(out / f"{stem}_aggregate.json", aggregate)
    print(f"wrote {out / (stem + '_aggregate.json')}")
    return 0


def _sweep_summary(per_seed, seeds, schemes, args) -> dict:
    summary: dict = {}
    for scheme in schemes:
        uniform = 0
        dup_ok = 0
        for seed in seeds:
            report = per_seed[seed][scheme]
            cv = report.get("gap_cv")
            if cv is not None and cv <= args.cv_threshold:
                uniform += 1
            dups = report.get("dup_at_extremes")
            if dups and dups[0] >= 2 and dups[1] >= 2:
                dup_ok += 1
        summary[scheme] = {
            "uniform_runs": uniform,
            "duplicate_extreme_runs": dup_ok,
            "cv_threshold": args.cv_threshold,
        }
    if len(schemes) == 2:
        table = []
        wins_cv = 0
        wins_min_cd = 0
        for seed in seeds:
            r1 = per_seed[seed][MU_PLUS_ONE]
            r2 = per_seed[seed][MU_PLUS_MU]
            cv1, cv2 = r1.get("gap_cv"), r2.get("gap_cv")
            if cv1 is not None and cv2 is not None and cv1 < cv2:
                wins_cv += 1
            if r1["min_finite_cd"] > r2["min_finite_cd"]:
                wins_min_cd += 1
            table.append({
                "seed": seed,
                "mu_plus_one_cv": cv1,
                "mu_plus_mu_cv": cv2,
                "mu_plus_one_min_cd": r1["min_finite_cd"],
                "mu_plus_mu_min_cd": r2["min_finite_cd"],
            })
        summary["paired"] = {
            "mu_plus_one_lower_cv_seeds": wins_cv,
            "mu_plus_one_higher_min_cd_seeds": wins_min_cd,
            "table": table,
        }
    return summary


def cmd_maximin(args) -> int:
    if args.n < 3:
        raise ValueError(f"--n must be >= 3, got {args.n}")
    k = args.n - 2
    if args.method == "closed":
        result = optimal_placement(args.n)
    elif args.method == "bisect":
        result = maximin_solve(k, tol=args.tol)
    else:
        result = grid_oracle(k, resolution=args.resolution)
    interior = ", ".join(repr(t) for t in result.witness.interior)
    lines = [
        f"n: {args.n}",
        f"method: {args.method}",
        f"value: {result.value!r}",
        f"witness_interior: [{interior}]",
        f"uniqueness: {result.uniqueness}",
    ]
    if result.family_note:
        lines.append(f"family: {result.family_note}")
    print("\n".join(lines))
    if args.out:
        write_json(args.out, {
            "manifest": {"n": args.n, "method": args.method,
                         "resolution": args.resolution, "tol": args.tol},
            "value": result.value,
            "witness_interior": list(result.witness.interior),
            "uniqueness": result.uniqueness,
            "family": result.family_note,
        })
    return 0


def cmd_analyze(args) -> int:
    population, manifest = read_population_csv(args.csv)
    problem_name = manifest.get("problem", "linefront")
    if problem_name not in PROBLEM_NAMES:
        raise ValueError(f"manifest names unknown problem {problem_name!r}")
    nvar = int(manifest.get("nvar", population.n_var))
    nobj = int(manifest.get("nobj", population.n_obj))
    problem = make_problem(problem_name, nvar, nobj)
    payload = {
        "manifest": manifest,
        **population_report(population, problem, **_report_kwargs(args)),
    }
    if args.out:
        write_json(args.out, payload)
        print(f"wrote {args.out}")
    else:
        print(json.dumps(json_ready(payload), indent=2, sort_keys=True))
    return 0


if __name__ == "__main__":
    sys.exit(main())
