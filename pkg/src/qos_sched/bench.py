"""Benchmark harness: run solvers across a grid of task counts and seeds.

Every (n_tasks, solver, seed) cell yields exactly one record; failures and
skips become status rows so the CSV stays rectangular and the run never
aborts early. All solvers in a cell share the same generated instance, which
makes their rows directly comparable. Wall-clock timing is confined to the
wall_clock_ms column; everything else is deterministic for fixed flags.
"""

from __future__ import annotations

import csv
import logging
import time
from dataclasses import dataclass

from .bnb import BnbConfig, solve_bnb
from .ga import GaParams, solve_ga
from .model import Caps, InfeasibleError, Instance, QosWeights
from .oracle import TooLargeError, solve_exhaustive
from .workload import DEFAULT_WEIGHTS, GeneratorRanges, NamedConfig, generate_instance

log = logging.getLogger(__name__)

SOLVERS = ("bnb", "ga", "brute")

CSV_COLUMNS = (
    "n_tasks",
    "solver",
    "time_objective_s",
    "cost_objective",
    "load_objective",
    "scalar",
    "wall_clock_ms",
    "nodes_or_generations",
    "seed",
    "proven_optimal",
    "status",
)

DEFAULT_BNB_MAX_TASKS = 12


@dataclass(frozen=True)
class BenchRecord:
    n_tasks: int
    solver: str
    time_objective: float | None
    cost_objective: float | None
    load_objective: float | None
    scalar: float | None
    wall_clock_ms: float | None
    nodes_or_generations: int | None
    seed: int
    proven_optimal: bool | None
    status: str = "ok"


def _run_cell(
    instance: Instance,
    solver: str,
    n: int,
    seed: int,
    bnb_config: BnbConfig,
    ga_params: GaParams,
) -> BenchRecord:
    start = time.perf_counter()
    try:
        if solver == "bnb":
            res = solve_bnb(instance, bnb_config)
            ev = res.evaluation
            work = res.nodes_expanded
            proven = res.proven_optimal
        elif solver == "ga":
            ga = solve_ga(instance, ga_params)
            ev = ga.best.fitness
            work = ga_params.max_generations
            proven = False
        elif solver == "brute":
            orc = solve_exhaustive(instance)
            ev = orc.evaluation
            work = instance.n_vms ** instance.n_tasks
            proven = True
        else:
            raise ValueError(f"unknown solver {solver!r}; expected one of {SOLVERS}")
    except InfeasibleError:
        return BenchRecord(n, solver, None, None, None, None, None, None, seed, None, "infeasible")
    except TooLargeError:
        return BenchRecord(n, solver, None, None, None, None, None, None, seed, None, "too_large")
    elapsed_ms = (time.perf_counter() - start) * 1000.0
    if ev is None:  # budget fired before any leaf
        return BenchRecord(n, solver, None, None, None, None, elapsed_ms, work, seed, proven, "no_solution")
    return BenchRecord(
        n, solver, ev.time, ev.cost, ev.load, ev.scalar, elapsed_ms, work, seed, proven, "ok"
    )


def run_bench(
    task_counts: list[int],
    solvers: list[str],
    n_seeds: int,
    *,
    config: NamedConfig | GeneratorRanges,
    weights: QosWeights = DEFAULT_WEIGHTS,
    caps: Caps = Caps(),
    base_seed: int = 0,
    bnb_max_tasks: int = DEFAULT_BNB_MAX_TASKS,
    bnb_config: BnbConfig | None = None,
    ga_params: GaParams | None = None,
) -> list[BenchRecord]:
    """One record per (n, solver, seed) cell, ordered by (n, solver, seed).

    Instance seeds are base_seed + seed index; the GA reuses the cell seed.
    BnB cells above bnb_max_tasks are recorded as status="skipped".
    """
    for solver in solvers:
        if solver not in SOLVERS:
            raise ValueError(f"unknown solver {solver!r}; expected one of {SOLVERS}")
    bnb_cfg = bnb_config or BnbConfig()
    ga_base = ga_params or GaParams()

    records = []
    for n in sorted(set(task_counts)):
        for solver in sorted(set(solvers)):
            for k in range(n_seeds):
                seed = base_seed + k
                if solver == "bnb" and n > bnb_max_tasks:
                    records.append(
                        BenchRecord(n, solver, None, None, None, None, None, None, seed, None, "skipped")
                    )
                    continue
                instance = generate_instance(n, config, seed, weights=weights, caps=caps)
                ga_cell = GaParams(
                    pop_size=ga_base.pop_size,
                    max_generations=ga_base.max_generations,
                    mutation_prob=ga_base.mutation_prob,
                    seed=seed,
                )
                rec = _run_cell(instance, solver, n, seed, bnb_cfg, ga_cell)
                log.debug("bench cell n=%d solver=%s seed=%d -> %s", n, solver, seed, rec.status)
                records.append(rec)
    return records


def _cell_str(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def write_csv(records: list[BenchRecord], path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_COLUMNS)
        for r in records:
            writer.writerow(
                [
                    _cell_str(v)
                    for v in (
                        r.n_tasks,
                        r.solver,
                        r.time_objective,
                        r.cost_objective,
                        r.load_objective,
                        r.scalar,
                        r.wall_clock_ms,
                        r.nodes_or_generations,
                        r.seed,
                        r.proven_optimal,
                        r.status,
                    )
                ]
            )


def _parse_cell(text: str, kind):
    if text == "":
        return None
    if kind is bool:
        return text == "true"
    return kind(text)


def read_csv(path) -> list[BenchRecord]:
    """Parse a bench CSV back into records, schema-checked."""
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != list(CSV_COLUMNS):
            raise ValueError(f"{path}: unexpected CSV header {header!r}")
        records = []
        for row in reader:
            if len(row) != len(CSV_COLUMNS):
                raise ValueError(f"{path}: malformed row {row!r}")
            records.append(
                BenchRecord(
                    n_tasks=int(row[0]),
                    solver=row[1],
                    time_objective=_parse_cell(row[2], float),
                    cost_objective=_parse_cell(row[3], float),
                    load_objective=_parse_cell(row[4], float),
                    scalar=_parse_cell(row[5], float),
                    wall_clock_ms=_parse_cell(row[6], float),
                    nodes_or_generations=_parse_cell(row[7], int),
                    seed=int(row[8]),
                    proven_optimal=_parse_cell(row[9], bool),
                    status=row[10],
                )
            )
    return records
