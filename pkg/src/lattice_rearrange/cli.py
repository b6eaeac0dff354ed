"""Command-line interface: gen / solve / validate / oracle / bench.

JSON in, JSON out.  Exit status 0 on success, 1 on a domain error (with a
machine-readable error document on stderr), 2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .bench import EXPERIMENTS, ExperimentSpec, emit_report, report_to_csv, \
    report_to_json, run_experiment
from .core import (
    CostModel,
    instance_from_dict,
    instance_to_dict,
    is_solved,
    plan_cost,
    plan_from_dict,
    plan_to_dict,
    simulate,
)
from .gen import (
    gen_block_random,
    gen_column_random,
    gen_tsp_clusters,
    gen_typed,
    gen_uniform_permutation,
    gen_x_random,
)
from .lattice2d import GoalPattern, greedy_2d, plan_ptr, sweep_cycles_ltr, \
    switch_cycles_ltr
from .lor import opt_plan_lor, sweep_cycles_lor
from .oracle import oracle_optimal
from .por import greedy_por, opt_plan_por

SOLVERS = {
    "sweep-lor": (sweep_cycles_lor, "labeled"),
    "opt-lor": (opt_plan_lor, "labeled"),
    "opt-por": (opt_plan_por, "typed"),
    "greedy-por": (greedy_por, "typed"),
    "sweep-ltr": (sweep_cycles_ltr, "labeled"),
    "switch-ltr": (switch_cycles_ltr, "labeled"),
    "plan-ptr": (plan_ptr, "typed"),
    "greedy-2d": (greedy_2d, "any"),
}

DISTRIBUTIONS = ("uniform", "x-random", "column-random", "block-random",
                 "typed", "tsp-clusters")


class UsageError(Exception):
    """Bad flag combination; maps to exit status 2."""


class PlanDoesNotSolve(Exception):
    """Plan is legal but leaves the instance unsolved."""


class SolverMismatch(Exception):
    """Solver requires a different instance kind than the input holds."""


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _write_text(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _resolve_seed(value) -> int:
    if value is not None:
        return value
    env = os.environ.get("LATTICE_REARRANGE_SEED")
    return int(env) if env else 0


def _cost_model(args) -> CostModel:
    return CostModel(args.cp, args.ct, args.metric)


def _load_instance(text: str):
    return instance_from_dict(json.loads(text))


def _need(args, names: str):
    for name in names.split():
        if getattr(args, name.replace("-", "_"), None) is None:
            raise UsageError(
                f"gen {args.distribution!r} requires --{name}")


def _cmd_gen(args) -> int:
    seed = _resolve_seed(args.seed)
    dist = args.distribution
    if dist == "uniform":
        _need(args, "m")
        inst = gen_uniform_permutation(args.m, seed)
    elif dist == "x-random":
        _need(args, "m x")
        inst = gen_x_random(args.m, args.x, seed)
    elif dist == "column-random":
        _need(args, "m1 m2")
        inst = gen_column_random(args.m1, args.m2, seed)
    elif dist == "block-random":
        _need(args, "m")
        inst = gen_block_random(args.m, seed)
    elif dist == "typed":
        _need(args, "k")
        if args.m1 is not None or args.m2 is not None:
            _need(args, "m1 m2")
            dims = (args.m1, args.m2)
        else:
            _need(args, "m")
            dims = args.m
        n = dims if isinstance(dims, int) else dims[0] * dims[1]
        base, rem = divmod(n, args.k)
        counts = tuple(base + (1 if t < rem else 0) for t in range(args.k))
        inst = gen_typed(dims, args.k, counts, GoalPattern(args.pattern), seed)
    else:  # tsp-clusters
        _need(args, "m1 m2 points")
        points = []
        for chunk in args.points.split(";"):
            x1, x2 = chunk.split(",")
            points.append((int(x1), int(x2)))
        inst = gen_tsp_clusters(points, (args.m1, args.m2))
    doc = {"format_version": 1, **instance_to_dict(inst)}
    _write_text(args.output, json.dumps(doc, indent=2) + "\n")
    return 0


def _cmd_solve(args) -> int:
    inst = _load_instance(_read_text(args.input))
    solver, wants = SOLVERS[args.solver]
    if wants != "any" and inst.kind != wants:
        raise SolverMismatch(
            f"solver {args.solver!r} expects a {wants} instance, "
            f"got {inst.kind}")
    model = _cost_model(args)
    plan = solver(inst, model)
    cost = plan_cost(inst, plan, model)
    doc = {
        "format_version": 1,
        **plan_to_dict(plan),
        "cost": {"picks": cost.picks, "travel": cost.travel,
                 "total": cost.total},
    }
    _write_text(args.output, json.dumps(doc, indent=2) + "\n")
    sys.stderr.write(
        f"picks={cost.picks} travel={cost.travel:.6g} "
        f"total={cost.total:.6g}\n")
    return 0


def _cmd_validate(args) -> int:
    inst = _load_instance(_read_text(args.instance))
    plan = plan_from_dict(json.loads(_read_text(args.plan)))
    model = _cost_model(args)
    result = simulate(inst, plan, model)  # raises on the first violation
    if not is_solved(result.config, inst):
        raise PlanDoesNotSolve("plan executes legally but the final "
                               "configuration is not the goal")
    cost = plan_cost(inst, plan, model)
    doc = {"format_version": 1, "solved": True, "picks": cost.picks,
           "travel": cost.travel, "total": cost.total}
    _write_text(args.output, json.dumps(doc, indent=2) + "\n")
    return 0


def _cmd_oracle(args) -> int:
    inst = _load_instance(_read_text(args.input))
    objective = "lexicographic" if args.objective == "lex" else "total"
    result = oracle_optimal(inst, _cost_model(args), objective, cap=args.cap)
    cost = result.cost
    doc = {
        "format_version": 1,
        "picks": cost.picks, "travel": cost.travel, "total": cost.total,
        "plan": plan_to_dict(result.plan),
    }
    _write_text(args.output, json.dumps(doc, indent=2) + "\n")
    return 0


def _cmd_bench(args) -> int:
    spec = ExperimentSpec(args.experiment, tuple(args.sizes), args.trials,
                          args.distribution, _resolve_seed(args.seed))
    report = run_experiment(spec)
    text = report_to_csv(report) if args.format == "csv" \
        else report_to_json(report)
    _write_text(args.output, text)
    return 0


def _add_io(sub, instance_plan=False):
    if instance_plan:
        sub.add_argument("--instance", required=True,
                         help="instance JSON path ('-' for stdin)")
        sub.add_argument("--plan", required=True,
                         help="plan JSON path ('-' for stdin)")
    else:
        sub.add_argument("--input", "-i", default="-",
                         help="instance JSON path (default: stdin)")
    sub.add_argument("--output", "-o", default="-",
                     help="output path (default: stdout)")


def _add_cost_flags(sub):
    sub.add_argument("--cp", type=float, default=1.0,
                     help="cost per pick-style action (default 1)")
    sub.add_argument("--ct", type=float, default=1.0,
                     help="cost per unit travel (default 1)")
    sub.add_argument("--metric", choices=("euclidean", "manhattan"),
                     default="euclidean")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lattice-rearrange",
        description="Rearrangement planning on 1D/2D lattices "
                    "(pick-n-swap cost model).",
        epilog=f"solvers: {', '.join(SOLVERS)}; "
               f"experiments: {', '.join(EXPERIMENTS)}")
    commands = parser.add_subparsers(dest="command", required=True)

    gen = commands.add_parser(
        "gen", help="generate a seeded instance",
        description="Distributions: " + ", ".join(DISTRIBUTIONS))
    gen.add_argument("distribution", choices=DISTRIBUTIONS)
    gen.add_argument("--m", type=int, help="1D length or square side")
    gen.add_argument("--m1", type=int, help="rows")
    gen.add_argument("--m2", type=int, help="columns")
    gen.add_argument("--k", type=int, help="number of item types")
    gen.add_argument("--x", type=int, help="shuffle block width")
    gen.add_argument("--pattern", choices=("blocks", "columns"),
                     default="blocks", help="typed goal layout")
    gen.add_argument("--points",
                     help="cluster points as 'x1,x2;x1,x2;...'")
    gen.add_argument("--seed", type=int, default=None,
                     help="falls back to $LATTICE_REARRANGE_SEED, then 0")
    _add_io(gen)
    gen.set_defaults(func=_cmd_gen)

    solve = commands.add_parser("solve", help="plan a rearrangement")
    solve.add_argument("--solver", required=True, choices=tuple(SOLVERS))
    _add_cost_flags(solve)
    _add_io(solve)
    solve.set_defaults(func=_cmd_solve)

    validate = commands.add_parser(
        "validate", help="check a plan against an instance")
    _add_cost_flags(validate)
    _add_io(validate, instance_plan=True)
    validate.set_defaults(func=_cmd_validate)

    oracle = commands.add_parser(
        "oracle", help="exhaustive optimum for small instances")
    oracle.add_argument("--objective", choices=("lex", "total"),
                        default="lex")
    oracle.add_argument("--cap", type=int, default=50_000_000,
                        help="state-expansion budget")
    _add_cost_flags(oracle)
    _add_io(oracle)
    oracle.set_defaults(func=_cmd_oracle)

    bench = commands.add_parser("bench", help="run a seeded experiment")
    bench.add_argument("--experiment", required=True,
                       choices=tuple(EXPERIMENTS))
    bench.add_argument("--sizes", type=int, nargs="+", required=True)
    bench.add_argument("--trials", type=int, default=100)
    bench.add_argument("--distribution", default=None)
    bench.add_argument("--seed", type=int, default=None,
                       help="falls back to $LATTICE_REARRANGE_SEED, then 0")
    bench.add_argument("--format", choices=("csv", "json"), default="csv")
    bench.add_argument("--output", "-o", default="-")
    bench.set_defaults(func=_cmd_bench)
    return parser


def main(argv=None) -> int:
    try:
        args = _build_parser().parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.func(args)
    except UsageError as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return 2
    except Exception as exc:  # domain errors become machine-readable JSON
        sys.stderr.write(json.dumps({
            "format_version": 1,
            "error": type(exc).__name__,
            "detail": str(exc),
        }) + "\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
