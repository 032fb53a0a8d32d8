"""Domain model for multi-QoS task-to-VM scheduling.

Machines and tasks are immutable records. An assignment maps every task to
one machine; evaluating it yields the objective triple (makespan, total
cost, worst composite machine load) and their weighted scalar. Everything
here is a pure function over immutable values, so instances and results can
be shared freely across threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

# Utilization ceiling: keeps every composite load strictly below 1 even when
# demand oversubscribes a machine.
U_MAX = 0.999999

# Largest double below 1: the product formula can round to exactly 1.0 once
# the surviving factor drops under half an ulp, so loads are capped here.
LOAD_MAX = math.nextafter(1.0, 0.0)

WEIGHT_SUM_TOL = 1e-9

# assignment[j] = index of the VM that runs task j
Assignment = tuple[int, ...]


class InfeasibleError(Exception):
    """No assignment satisfies the instance caps."""


@dataclass(frozen=True)
class VmSpec:
    """One virtual machine: capacities and unit prices.

    Capacities: cpu in MIPS, mem in MB, stor in GB, comm in MB/s.
    Prices: cpu_cost per CPU-second, mem_cost per 1024 MB, stor_cost per
    100 GB, comm_cost per MB/s of demanded bandwidth. Billing is
    proportional: fractional blocks cost fractional units.
    """

    cpu: float
    mem: float
    stor: float
    comm: float
    cpu_cost: float = 0.0
    mem_cost: float = 0.0
    stor_cost: float = 0.0
    comm_cost: float = 0.0

    def __post_init__(self) -> None:
        # comm = 0 would divide by zero in the transfer-time term
        if min(self.cpu, self.mem, self.stor, self.comm) <= 0:
            raise ValueError("VM capacities must be strictly positive")
        if min(self.cpu_cost, self.mem_cost, self.stor_cost, self.comm_cost) < 0:
            raise ValueError("VM unit costs must be non-negative")


@dataclass(frozen=True)
class TaskSpec:
    """One task: resource demands, length and data size.

    req_cpu MIPS, req_mem MB, req_stor GB, req_comm MB/s; instruction_count
    in MI (million instructions); data_size is the input file in MB.
    output_size is carried for the instance file format only; no formula
    reads it.
    """

    req_cpu: float = 0.0
    req_mem: float = 0.0
    req_stor: float = 0.0
    req_comm: float = 0.0
    instruction_count: float = 0.0
    data_size: float = 0.0
    output_size: float = 0.0

    def __post_init__(self) -> None:
        if min(self.req_cpu, self.req_mem, self.req_stor, self.req_comm,
               self.instruction_count, self.data_size, self.output_size) < 0:
            raise ValueError("task demands and sizes must be non-negative")


@dataclass(frozen=True)
class QosWeights:
    """Objective weights w_* plus the load sub-weights lw_*.

    w_time + w_cost + w_load must equal 1 (within 1e-9); the lw_* exponents
    balance CPU, memory and bandwidth inside the composite load.
    """

    w_time: float
    w_cost: float
    w_load: float
    lw_cpu: float = 1.0
    lw_mem: float = 1.0
    lw_bw: float = 1.0

    def __post_init__(self) -> None:
        for w in (self.w_time, self.w_cost, self.w_load):
            if not 0.0 <= w <= 1.0:
                raise ValueError("objective weights must lie in [0, 1]")
        if abs(self.w_time + self.w_cost + self.w_load - 1.0) > WEIGHT_SUM_TOL:
            raise ValueError(
                "objective weights must sum to 1 (got %r)"
                % (self.w_time + self.w_cost + self.w_load)
            )
        if min(self.lw_cpu, self.lw_mem, self.lw_bw) < 0:
            raise ValueError("load sub-weights must be non-negative")


@dataclass(frozen=True)
class Caps:
    """Optional feasibility caps: a deadline in seconds and a budget."""

    max_time: float | None = None
    budget: float | None = None


@dataclass(frozen=True)
class Instance:
    """A full scheduling problem: machines, tasks, weights and caps."""

    vms: tuple[VmSpec, ...]
    tasks: tuple[TaskSpec, ...]
    weights: QosWeights
    caps: Caps = Caps()

    def __post_init__(self) -> None:
        object.__setattr__(self, "vms", tuple(self.vms))
        object.__setattr__(self, "tasks", tuple(self.tasks))
        if not self.vms:
            raise ValueError("an instance needs at least one VM")

    @property
    def n_vms(self) -> int:
        return len(self.vms)

    @property
    def n_tasks(self) -> int:
        return len(self.tasks)


@dataclass(frozen=True)
class Evaluation:
    """Objective triple plus the weighted scalar for one assignment."""

    time: float
    cost: float
    load: float
    scalar: float


def exec_time(task: TaskSpec, vm: VmSpec) -> float:
    """CPU seconds the task occupies on the machine (also the billed CPU time)."""
    return task.instruction_count / vm.cpu


def task_time(task: TaskSpec, vm: VmSpec) -> float:
    """Execution plus data-transfer time of one task on one machine, seconds."""
    return task.instruction_count / vm.cpu + task.data_size / vm.comm


def task_cost(task: TaskSpec, vm: VmSpec) -> float:
    """Cost units billed for running the task on the machine.

    CPU is billed per second of execution time, memory per 1024 MB block,
    storage per 100 GB block, bandwidth per demanded MB/s; all proportional.
    """
    return (
        exec_time(task, vm) * vm.cpu_cost
        + task.req_mem / 1024.0 * vm.mem_cost
        + task.req_stor / 100.0 * vm.stor_cost
        + task.req_comm * vm.comm_cost
    )


def machine_utilization(vm: VmSpec, assigned) -> tuple[float, float, float]:
    """(u_cpu, u_mem, u_bw) demand-over-capacity ratios, each clamped to U_MAX."""
    cpu = mem = bw = 0.0
    for task in assigned:
        cpu += task.req_cpu
        mem += task.req_mem
        bw += task.req_comm
    return (
        min(cpu / vm.cpu, U_MAX),
        min(mem / vm.mem, U_MAX),
        min(bw / vm.comm, U_MAX),
    )


def machine_load(u: tuple[float, float, float], weights: QosWeights) -> float:
    """Composite load of one machine from its utilization triple, in [0, 1).

    Load = 1 - (1-u_cpu)^lw_cpu * (1-u_mem)^lw_mem * (1-u_bw)^lw_bw.
    """
    u_cpu, u_mem, u_bw = u
    load = 1.0 - (
        (1.0 - u_cpu) ** weights.lw_cpu
        * (1.0 - u_mem) ** weights.lw_mem
        * (1.0 - u_bw) ** weights.lw_bw
    )
    return load if load < 1.0 else LOAD_MAX


def round_robin_assignment(instance: Instance) -> Assignment:
    """Task j on machine j mod m; the baseline for normalized scalarization."""
    m = instance.n_vms
    return tuple(j % m for j in range(instance.n_tasks))


def evaluate(
    instance: Instance,
    assignment,
    baseline: Evaluation | None = None,
) -> Evaluation:
    """Score an assignment: makespan, summed cost, worst machine load, scalar.

    The scalar is the raw weighted sum w_time*time + w_cost*cost +
    w_load*load. With ``baseline`` given (normalized mode), each objective is
    first divided by the corresponding baseline component (zero components
    count as 1); the stored triple stays raw either way.

    Raises IndexError when an assignment entry is not a valid VM index.
    """
    vms = instance.vms
    tasks = instance.tasks
    m = len(vms)
    if len(assignment) != len(tasks):
        raise ValueError(
            "assignment length %d does not match task count %d"
            % (len(assignment), len(tasks))
        )

    times = [0.0] * m
    cpu = [0.0] * m
    mem = [0.0] * m
    bw = [0.0] * m
    cost = 0.0
    for j, task in enumerate(tasks):
        i = assignment[j]
        if not 0 <= i < m:
            raise IndexError(
                "assignment[%d] = %r is not a VM index (m = %d)" % (j, i, m)
            )
        vm = vms[i]
        times[i] += task_time(task, vm)
        cost += task_cost(task, vm)
        cpu[i] += task.req_cpu
        mem[i] += task.req_mem
        bw[i] += task.req_comm

    time_obj = max(times)
    load_obj = 0.0
    weights = instance.weights
    for i, vm in enumerate(vms):
        u = (
            min(cpu[i] / vm.cpu, U_MAX),
            min(mem[i] / vm.mem, U_MAX),
            min(bw[i] / vm.comm, U_MAX),
        )
        li = machine_load(u, weights)
        if li > load_obj:
            load_obj = li

    if baseline is None:
        scalar = (
            weights.w_time * time_obj
            + weights.w_cost * cost
            + weights.w_load * load_obj
        )
    else:
        scalar = (
            weights.w_time * (time_obj / (baseline.time or 1.0))
            + weights.w_cost * (cost / (baseline.cost or 1.0))
            + weights.w_load * (load_obj / (baseline.load or 1.0))
        )
    return Evaluation(time_obj, cost, load_obj, scalar)


def check_caps(instance: Instance, evaluation: Evaluation) -> bool:
    """True when the evaluation respects the caps; comparisons are inclusive."""
    caps = instance.caps
    if caps.max_time is not None and evaluation.time > caps.max_time:
        return False
    if caps.budget is not None and evaluation.cost > caps.budget:
        return False
    return True
