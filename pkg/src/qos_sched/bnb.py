"""Exact branch-and-bound solver.

Depth-first search over task-to-VM decisions: each tree level fixes the
machine of one task, so leaves are complete assignments. Admissible
per-objective lower bounds prune subtrees that cannot beat the incumbent.

Pruning modes:

* ``scalar`` (default): prune when the bound on the weighted scalar cannot
  improve the incumbent. Exhausting the search proves global optimality.
* ``componentwise``: prune unless every component bound strictly beats the
  incumbent's triple, and accept leaves only when they improve all three
  components at once. Kept for comparison experiments; this rule can discard
  scalar-optimal solutions, so it never claims proven optimality.
* ``none``: no pruning at all (full enumeration through the same machinery).

Results are bit-identical across runs for the same instance and config as
long as no wall-clock budget fires.
"""

from __future__ import annotations

import sys
import time
from dataclasses import dataclass

from .model import (
    LOAD_MAX,
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

PRUNE_MODES = ("scalar", "componentwise", "none")
BRANCH_ORDERS = ("input-order", "longest-task-first")

# Children whose bound is within this of the incumbent are pruned too;
# stops float-equal subtrees from being re-explored.
PRUNE_EPS = 1e-12


@dataclass(frozen=True)
class BnbConfig:
    prune_mode: str = "scalar"
    node_budget: int | None = None
    time_budget: float | None = None  # wall-clock seconds
    branch_order: str = "input-order"
    warm_start: bool = False

    def __post_init__(self) -> None:
        if self.prune_mode not in PRUNE_MODES:
            raise ValueError(f"prune_mode must be one of {PRUNE_MODES}")
        if self.branch_order not in BRANCH_ORDERS:
            raise ValueError(f"branch_order must be one of {BRANCH_ORDERS}")
        if self.node_budget is not None and self.node_budget <= 0:
            raise ValueError("node_budget must be positive")
        if self.time_budget is not None and self.time_budget <= 0:
            raise ValueError("time_budget must be positive")


@dataclass(frozen=True)
class BnbNode:
    """A search node: tasks 0..depth-1 assigned per ``partial``."""

    depth: int
    partial: Assignment
    lb_time: float = 0.0
    lb_cost: float = 0.0
    lb_load: float = 0.0
    lb_scalar: float = 0.0


@dataclass(frozen=True)
class BnbResult:
    best: Assignment | None
    evaluation: Evaluation | None
    nodes_expanded: int
    pruned: int
    proven_optimal: bool


def lower_bound(instance: Instance, node: BnbNode) -> tuple[float, float, float, float]:
    """Admissible (lb_time, lb_cost, lb_load, lb_scalar) for the node.

    lb_time: partial makespan, raised by two relaxations over the unassigned
    tasks (each takes its cheapest machine time): every remaining task must
    start on top of the least-loaded machine, and the total remaining work
    spread perfectly over all machines. lb_cost adds each unassigned task's
    cheapest cost. lb_load is the partial load alone: demands only grow as
    tasks are added, so it never exceeds any completion's load. At a leaf all
    bounds equal the exact evaluation.
    """
    m = instance.n_vms
    n = instance.n_tasks
    depth = node.depth
    partial = node.partial
    if len(partial) != depth or depth > n:
        raise ValueError("node.partial must assign tasks 0..depth-1")

    vms = instance.vms
    tasks = instance.tasks
    weights = instance.weights

    times = [0.0] * m
    cpu = [0.0] * m
    mem = [0.0] * m
    bw = [0.0] * m
    cost = 0.0
    for j in range(depth):
        i = partial[j]
        if not 0 <= i < m:
            raise IndexError(f"partial[{j}] = {i!r} is not a VM index (m = {m})")
        task = tasks[j]
        vm = vms[i]
        times[i] += task_time(task, vm)
        cost += task_cost(task, vm)
        cpu[i] += task.req_cpu
        mem[i] += task.req_mem
        bw[i] += task.req_comm

    lb_time = max(times)
    rem_cost = 0.0
    if depth < n:
        t_min = [
            min(task_time(tasks[j], vm) for vm in vms) for j in range(depth, n)
        ]
        for j in range(depth, n):
            rem_cost += min(task_cost(tasks[j], vm) for vm in vms)
        spread = (sum(times) + sum(t_min)) / m
        if spread > lb_time:
            lb_time = spread
        start = min(times) + max(t_min)
        if start > lb_time:
            lb_time = start
    lb_cost = cost + rem_cost

    lb_load = 0.0
    for i, vm in enumerate(vms):
        u = (
            min(cpu[i] / vm.cpu, U_MAX),
            min(mem[i] / vm.mem, U_MAX),
            min(bw[i] / vm.comm, U_MAX),
        )
        li = machine_load(u, weights)
        if li > lb_load:
            lb_load = li

    lb_scalar = (
        weights.w_time * lb_time + weights.w_cost * lb_cost + weights.w_load * lb_load
    )
    return lb_time, lb_cost, lb_load, lb_scalar


def _greedy_assignment(instance: Instance, order: list[int]) -> Assignment:
    """Each task (in branch order) onto the machine with the least scalar bump."""
    n = instance.n_tasks
    assign = [0] * n
    for pos, j in enumerate(order):
        # evaluate each candidate prefix as its own small instance
        sub_tasks = tuple(instance.tasks[k] for k in order[: pos + 1])
        sub = Instance(instance.vms, sub_tasks, instance.weights, instance.caps)
        head = tuple(assign[k] for k in order[:pos])
        best_i = 0
        best_scalar = float("inf")
        for i in range(instance.n_vms):
            ev = evaluate(sub, head + (i,))
            if ev.scalar < best_scalar:
                best_scalar = ev.scalar
                best_i = i
        assign[j] = best_i
    return tuple(assign)


def solve_bnb(
    instance: Instance,
    config: BnbConfig | None = None,
    *,
    on_incumbent=None,
) -> BnbResult:
    """Run the search and return the best assignment found.

    ``on_incumbent(assignment, evaluation)`` is called at every incumbent
    update (test instrumentation). A fired node or wall-clock budget is not
    an error: the result carries proven_optimal=False with the incumbent so
    far. InfeasibleError is raised only when the search completes and no
    cap-respecting leaf exists.
    """
    cfg = config or BnbConfig()
    m = instance.n_vms
    n = instance.n_tasks
    # the DFS recurses one frame per task
    sys.setrecursionlimit(max(sys.getrecursionlimit(), n + 200))
    vms = instance.vms
    tasks = instance.tasks
    weights = instance.weights
    w_t, w_c, w_l = weights.w_time, weights.w_cost, weights.w_load
    lw1, lw2, lw3 = weights.lw_cpu, weights.lw_mem, weights.lw_bw

    if cfg.branch_order == "longest-task-first":
        order = sorted(range(n), key=lambda j: (-tasks[j].instruction_count, j))
    else:
        order = list(range(n))

    p_rows = [[task_time(t, vm) for t in tasks] for vm in vms]
    c_rows = [[task_cost(t, vm) for t in tasks] for vm in vms]
    t_min = [min(p_rows[i][j] for i in range(m)) for j in range(n)]
    c_min = [min(c_rows[i][j] for i in range(m)) for j in range(n)]
    d_cpu = [t.req_cpu for t in tasks]
    d_mem = [t.req_mem for t in tasks]
    d_bw = [t.req_comm for t in tasks]
    cap_cpu = [vm.cpu for vm in vms]
    cap_mem = [vm.mem for vm in vms]
    cap_bw = [vm.comm for vm in vms]

    # suffix aggregates of the cheapest-completion relaxations, by branch depth
    suf_tsum = [0.0] * (n + 1)
    suf_csum = [0.0] * (n + 1)
    suf_tmax = [0.0] * (n + 1)
    for d in range(n - 1, -1, -1):
        j = order[d]
        suf_tsum[d] = suf_tsum[d + 1] + t_min[j]
        suf_csum[d] = suf_csum[d + 1] + c_min[j]
        suf_tmax[d] = max(suf_tmax[d + 1], t_min[j])

    machine_times = [0.0] * m
    used_cpu = [0.0] * m
    used_mem = [0.0] * m
    used_bw = [0.0] * m
    loads = [0.0] * m
    assign = [0] * n
    cost = 0.0

    incumbent_scalar = float("inf")
    ub_t = ub_c = ub_l = float("inf")
    best_assign: Assignment | None = None
    best_eval: Evaluation | None = None
    nodes = 0
    pruned = 0
    stopped = False

    mode = cfg.prune_mode
    componentwise_mode = mode == "componentwise"
    scalar_mode = mode == "scalar"
    cap_time = instance.caps.max_time
    cap_budget = instance.caps.budget
    node_budget = cfg.node_budget
    deadline = time.monotonic() + cfg.time_budget if cfg.time_budget else None

    if cfg.warm_start and n > 0:
        warm = _greedy_assignment(instance, order)
        ev = evaluate(instance, warm)
        if check_caps(instance, ev):
            best_assign = warm
            best_eval = ev
            incumbent_scalar = ev.scalar
            ub_t, ub_c, ub_l = ev.time, ev.cost, ev.load
            if on_incumbent:
                on_incumbent(warm, ev)

    def visit(depth: int) -> None:
        nonlocal nodes, pruned, stopped, cost
        nonlocal incumbent_scalar, ub_t, ub_c, ub_l, best_assign, best_eval
        if stopped:
            return
        if node_budget is not None and nodes >= node_budget:
            stopped = True
            return
        if deadline is not None and time.monotonic() >= deadline:
            stopped = True
            return
        nodes += 1

        if depth == n:
            t_leaf = max(machine_times)
            c_leaf = cost
            if cap_time is not None and t_leaf > cap_time:
                return
            if cap_budget is not None and c_leaf > cap_budget:
                return
            l_leaf = max(loads)
            if componentwise_mode:
                if t_leaf < ub_t and c_leaf < ub_c and l_leaf < ub_l:
                    ev = evaluate(instance, tuple(assign))
                    ub_t, ub_c, ub_l = ev.time, ev.cost, ev.load
                    best_assign = tuple(assign)
                    best_eval = ev
                    if on_incumbent:
                        on_incumbent(best_assign, ev)
            else:
                s_leaf = w_t * t_leaf + w_c * c_leaf + w_l * l_leaf
                if s_leaf < incumbent_scalar:
                    incumbent_scalar = s_leaf
                    best_assign = tuple(assign)
                    best_eval = evaluate(instance, best_assign)
                    if on_incumbent:
                        on_incumbent(best_assign, best_eval)
            return

        j = order[depth]
        d1 = depth + 1
        rem_c = suf_csum[d1]
        rem_t = suf_tsum[d1]
        rem_mx = suf_tmax[d1]
        at_leaf = d1 == n
        for i in range(m):
            old_t = machine_times[i]
            old_cpu = used_cpu[i]
            old_mem = used_mem[i]
            old_bw = used_bw[i]
            old_load = loads[i]
            old_cost = cost

            machine_times[i] = old_t + p_rows[i][j]
            cost = old_cost + c_rows[i][j]
            used_cpu[i] = old_cpu + d_cpu[j]
            used_mem[i] = old_mem + d_mem[j]
            used_bw[i] = old_bw + d_bw[j]
            u1 = used_cpu[i] / cap_cpu[i]
            if u1 > U_MAX:
                u1 = U_MAX
            u2 = used_mem[i] / cap_mem[i]
            if u2 > U_MAX:
                u2 = U_MAX
            u3 = used_bw[i] / cap_bw[i]
            if u3 > U_MAX:
                u3 = U_MAX
            li = 1.0 - (
                (1.0 - u1) ** lw1 * (1.0 - u2) ** lw2 * (1.0 - u3) ** lw3
            )
            loads[i] = li if li < 1.0 else LOAD_MAX
            assign[j] = i

            lb_t = max(machine_times)
            if not at_leaf:
                spread = (sum(machine_times) + rem_t) / m
                if spread > lb_t:
                    lb_t = spread
                start = min(machine_times) + rem_mx
                if start > lb_t:
                    lb_t = start
            lb_c = cost + rem_c
            lb_l = max(loads)

            if scalar_mode:
                keep = (
                    w_t * lb_t + w_c * lb_c + w_l * lb_l
                    < incumbent_scalar - PRUNE_EPS
                )
            elif componentwise_mode:
                keep = lb_t < ub_t and lb_c < ub_c and lb_l < ub_l
            else:
                keep = True
            if keep:
                visit(d1)
            else:
                pruned += 1

            machine_times[i] = old_t
            used_cpu[i] = old_cpu
            used_mem[i] = old_mem
            used_bw[i] = old_bw
            loads[i] = old_load
            cost = old_cost
            if stopped:
                break

    visit(0)

    proven = (not stopped) and mode in ("scalar", "none")
    if best_assign is None and not stopped:
        raise InfeasibleError("no assignment satisfies the caps")
    return BnbResult(best_assign, best_eval, nodes, pruned, proven)
