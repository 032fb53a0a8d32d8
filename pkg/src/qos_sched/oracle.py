"""Exhaustive enumeration oracle.

Walks every one of the m^n assignments and returns a provably optimal one.
Deliberately dumb: no pruning, no bounding, so it stays a trustworthy ground
truth for the real solvers. The inner loop mirrors evaluate()'s accumulation
order exactly, so the scalars it compares are bit-identical to the model's.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .model import (
    U_MAX,
    Assignment,
    Evaluation,
    InfeasibleError,
    Instance,
    check_caps,
    evaluate,
    machine_load,
    task_cost,
    task_time,
)

# Hard ceiling on m^n; beyond it the enumeration would run away.
ENUMERATION_GUARD = 10_000_000

TIE_TOL = 1e-9


class TooLargeError(Exception):
    """m^n exceeds the enumeration guard."""


@dataclass(frozen=True)
class OracleResult:
    best: Assignment
    evaluation: Evaluation
    optima_count: int


def solve_exhaustive(instance: Instance, *, guard: int = ENUMERATION_GUARD) -> OracleResult:
    """Minimum-scalar assignment over all m^n candidates.

    Ties go to the lexicographically smallest assignment vector (the
    enumeration is plain mixed-radix counting, so the first strict improvement
    wins). Assignments violating the caps are skipped; optima_count is the
    number of feasible assignments within TIE_TOL of the optimum.

    Raises TooLargeError when m^n > guard and InfeasibleError when no
    assignment respects the caps.
    """
    m = instance.n_vms
    n = instance.n_tasks
    if m ** n > guard:
        raise TooLargeError(f"{m}^{n} assignments exceed the guard of {guard}")

    vms = instance.vms
    tasks = instance.tasks
    weights = instance.weights
    p_rows = [[task_time(t, vm) for t in tasks] for vm in vms]
    c_rows = [[task_cost(t, vm) for t in tasks] for vm in vms]
    d_cpu = [t.req_cpu for t in tasks]
    d_mem = [t.req_mem for t in tasks]
    d_bw = [t.req_comm for t in tasks]
    w_time, w_cost, w_load = weights.w_time, weights.w_cost, weights.w_load
    max_time = instance.caps.max_time
    budget = instance.caps.budget

    def scan():
        """Yield (assignment, time, cost, scalar) for every feasible assignment."""
        for assign in itertools.product(range(m), repeat=n):
            times = [0.0] * m
            cpu = [0.0] * m
            mem = [0.0] * m
            bw = [0.0] * m
            cost = 0.0
            for j in range(n):
                i = assign[j]
                times[i] += p_rows[i][j]
                cost += c_rows[i][j]
                cpu[i] += d_cpu[j]
                mem[i] += d_mem[j]
                bw[i] += d_bw[j]
            time_obj = max(times)
            if max_time is not None and time_obj > max_time:
                continue
            if budget is not None and cost > budget:
                continue
            load_obj = 0.0
            for i, vm in enumerate(vms):
                u = (
                    min(cpu[i] / vm.cpu, U_MAX),
                    min(mem[i] / vm.mem, U_MAX),
                    min(bw[i] / vm.comm, U_MAX),
                )
                li = machine_load(u, weights)
                if li > load_obj:
                    load_obj = li
            yield assign, w_time * time_obj + w_cost * cost + w_load * load_obj

    best_assign = None
    best_scalar = float("inf")
    for assign, scalar in scan():
        if scalar < best_scalar:
            best_scalar = scalar
            best_assign = assign
    if best_assign is None:
        raise InfeasibleError("no assignment satisfies the caps")

    optima_count = sum(1 for _, scalar in scan() if scalar <= best_scalar + TIE_TOL)

    best_eval = evaluate(instance, best_assign)
    if not check_caps(instance, best_eval):  # pragma: no cover - mirrors scan()
        raise InfeasibleError("no assignment satisfies the caps")
    return OracleResult(best_assign, best_eval, optima_count)
