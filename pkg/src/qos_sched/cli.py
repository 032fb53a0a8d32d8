"""Command-line entry point.

Subcommands: ``gen`` writes a random instance file, ``solve`` runs one solver
on an instance, ``bench`` sweeps solvers over task counts and emits a CSV
plus SVG charts. Set QOS_SCHED_LOG=DEBUG (or any logging level name) for
diagnostics.

Exit codes: 0 success, 2 bad flags or unreadable input, 3 no feasible
assignment, 4 instance too large for exhaustive enumeration.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import logging
import os
import sys

from .bench import DEFAULT_BNB_MAX_TASKS, run_bench, write_csv
from .bnb import BRANCH_ORDERS, PRUNE_MODES, BnbConfig, solve_bnb
from .charts import render_charts
from .ga import GaParams, solve_ga
from .model import Caps, InfeasibleError, QosWeights
from .oracle import TooLargeError, solve_exhaustive
from .workload import (
    PRESETS,
    InstanceFormatError,
    generate_instance,
    load_instance,
    preset_config,
    save_instance,
)

log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_INFEASIBLE = 3
EXIT_TOO_LARGE = 4


def _triple(text: str, flag: str) -> tuple[float, float, float]:
    parts = text.split(",")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"{flag} expects three comma-separated numbers")
    try:
        return tuple(float(p) for p in parts)  # type: ignore[return-value]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"{flag}: {exc}") from exc


def _int_list(text: str) -> list[int]:
    try:
        return [int(p) for p in text.split(",") if p != ""]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _common_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--seed", type=int, default=0, help="master seed (default 0)")
    parser.add_argument(
        "--weights",
        type=lambda s: _triple(s, "--weights"),
        default=(1 / 3, 1 / 3, 1 / 3),
        metavar="W_TIME,W_COST,W_LOAD",
        help="objective weights, must sum to 1 (default equal thirds)",
    )
    parser.add_argument(
        "--load-weights",
        type=lambda s: _triple(s, "--load-weights"),
        default=(1.0, 1.0, 1.0),
        metavar="LW_CPU,LW_MEM,LW_BW",
        help="composite-load sub-weights (default 1,1,1)",
    )
    parser.add_argument(
        "--preset",
        choices=PRESETS,
        default="table2",
        help="machine configuration: the fixed four-VM table or drawn VMs",
    )


def _weights(args) -> QosWeights:
    wt, wc, wl = args.weights
    lc, lm, lb = args.load_weights
    return QosWeights(wt, wc, wl, lc, lm, lb)


def _ga_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--pop-size", type=int, default=20)
    parser.add_argument("--generations", type=int, default=100)
    parser.add_argument("--mutation-prob", type=float, default=0.05)


def _bnb_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--bnb-mode", choices=PRUNE_MODES, default="scalar")
    parser.add_argument("--node-budget", type=int, default=None)
    parser.add_argument("--time-budget", type=float, default=None)
    parser.add_argument("--branch-order", choices=BRANCH_ORDERS, default="input-order")
    parser.add_argument("--warm-start", action="store_true")


def _bnb_config(args) -> BnbConfig:
    return BnbConfig(
        prune_mode=args.bnb_mode,
        node_budget=args.node_budget,
        time_budget=args.time_budget,
        branch_order=args.branch_order,
        warm_start=args.warm_start,
    )


def _digest(path) -> str:
    with open(path, "rb") as fh:
        return hashlib.sha256(fh.read()).hexdigest()


def cmd_gen(args) -> int:
    caps = Caps(max_time=args.max_time, budget=args.budget)
    instance = generate_instance(
        args.tasks,
        preset_config(args.preset),
        args.seed,
        weights=_weights(args),
        caps=caps,
        n_vms=args.vms,
    )
    save_instance(instance, args.output)
    print(f"{args.output} sha256={_digest(args.output)}")
    return EXIT_OK


def _print_solution(algo: str, evaluation, assignment, stats: dict) -> None:
    print(f"algo            {algo}")
    print(f"time_s          {evaluation.time!r}")
    print(f"cost            {evaluation.cost!r}")
    print(f"load            {evaluation.load!r}")
    print(f"scalar          {evaluation.scalar!r}")
    print("assignment      " + " ".join(str(i) for i in assignment))
    for key, value in stats.items():
        print(f"{key:<15} {json.dumps(value)}")


def cmd_solve(args) -> int:
    instance = load_instance(args.instance)
    if args.algo == "bnb":
        res = solve_bnb(instance, _bnb_config(args))
        if res.best is None:
            print("no solution found within budget", file=sys.stderr)
            return EXIT_INFEASIBLE
        evaluation, assignment = res.evaluation, res.best
        stats = {
            "nodes_expanded": res.nodes_expanded,
            "pruned": res.pruned,
            "proven_optimal": res.proven_optimal,
        }
    elif args.algo == "ga":
        params = GaParams(
            pop_size=args.pop_size,
            max_generations=args.generations,
            mutation_prob=args.mutation_prob,
            seed=args.seed,
        )
        ga = solve_ga(instance, params)
        evaluation, assignment = ga.best.fitness, ga.best.genes
        stats = {
            "generations": params.max_generations,
            "pop_size": params.pop_size,
            "mutation_prob": params.mutation_prob,
            "seed": ga.seed,
        }
    else:
        orc = solve_exhaustive(instance)
        evaluation, assignment = orc.evaluation, orc.best
        stats = {
            "enumerated": instance.n_vms ** instance.n_tasks,
            "optima_count": orc.optima_count,
        }

    _print_solution(args.algo, evaluation, assignment, stats)
    if args.output:
        report = {
            "algo": args.algo,
            "instance": str(args.instance),
            "evaluation": {
                "time_s": evaluation.time,
                "cost": evaluation.cost,
                "load": evaluation.load,
                "scalar": evaluation.scalar,
            },
            "assignment": list(assignment),
            "stats": stats,
        }
        with open(args.output, "w", encoding="utf-8") as fh:
            json.dump(report, fh, indent=2)
            fh.write("\n")
        print(f"report written to {args.output}")
    return EXIT_OK


def cmd_bench(args) -> int:
    solvers = [s for s in args.solvers.split(",") if s]
    records = run_bench(
        args.tasks,
        solvers,
        args.seeds,
        config=preset_config(args.preset),
        weights=_weights(args),
        base_seed=args.seed,
        bnb_max_tasks=args.bnb_max_tasks,
        bnb_config=_bnb_config(args),
        ga_params=GaParams(
            pop_size=args.pop_size,
            max_generations=args.generations,
            mutation_prob=args.mutation_prob,
        ),
    )
    os.makedirs(args.output, exist_ok=True)
    csv_path = os.path.join(args.output, "bench.csv")
    write_csv(records, csv_path)
    chart_paths = render_charts(csv_path, args.output)
    print(f"{len(records)} records -> {csv_path}")
    for path in chart_paths:
        print(path)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qos-sched",
        description="Task-to-VM scheduling: exact branch-and-bound, GA baseline, brute-force oracle.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_gen = sub.add_parser("gen", help="generate a random instance file")
    _common_flags(p_gen)
    p_gen.add_argument("--tasks", type=int, required=True)
    p_gen.add_argument("--vms", type=int, default=4, help="VM count for drawn-VM presets")
    p_gen.add_argument("--max-time", type=float, default=None, help="makespan cap, seconds")
    p_gen.add_argument("--budget", type=float, default=None, help="cost cap")
    p_gen.add_argument("-o", "--output", default="instance.json")
    p_gen.set_defaults(func=cmd_gen)

    p_solve = sub.add_parser("solve", help="run one solver on an instance file")
    _common_flags(p_solve)
    p_solve.add_argument("instance")
    p_solve.add_argument("--algo", choices=("bnb", "ga", "brute"), required=True)
    _bnb_flags(p_solve)
    _ga_flags(p_solve)
    p_solve.add_argument("-o", "--output", default=None, help="write a JSON report here")
    p_solve.set_defaults(func=cmd_solve)

    p_bench = sub.add_parser("bench", help="sweep solvers over task counts; CSV + SVG charts")
    _common_flags(p_bench)
    p_bench.add_argument("--tasks", type=_int_list, required=True, metavar="N1,N2,...")
    p_bench.add_argument("--solvers", default="bnb,ga,brute")
    p_bench.add_argument("--seeds", type=int, default=3, help="seeds per cell")
    p_bench.add_argument("--bnb-max-tasks", type=int, default=DEFAULT_BNB_MAX_TASKS)
    _bnb_flags(p_bench)
    _ga_flags(p_bench)
    p_bench.add_argument("-o", "--output", default="bench_out", help="output directory")
    p_bench.set_defaults(func=cmd_bench)

    return parser


def main(argv=None) -> int:
    level = os.environ.get("QOS_SCHED_LOG", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING))
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InstanceFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InfeasibleError as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except TooLargeError as exc:
        print(f"too large: {exc}", file=sys.stderr)
        return EXIT_TOO_LARGE


if __name__ == "__main__":
    sys.exit(main())
