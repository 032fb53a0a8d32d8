"""Multi-QoS task-to-VM scheduling.

Minimizes a weighted combination of makespan, resource cost and worst
composite machine load over task-to-VM assignments, with an exact
branch-and-bound solver, a genetic-algorithm baseline, and a brute-force
oracle for ground truth.
"""

from .bnb import BnbConfig, BnbNode, BnbResult, lower_bound, solve_bnb
from .ga import (
    Chromosome,
    GaParams,
    GaResult,
    crossover,
    init_population,
    mutate,
    replace_if_better,
    select,
    solve_ga,
)
from .model import (
    U_MAX,
    Assignment,
    Caps,
    Evaluation,
    InfeasibleError,
    Instance,
    QosWeights,
    TaskSpec,
    VmSpec,
    check_caps,
    evaluate,
    machine_load,
    machine_utilization,
    round_robin_assignment,
    task_cost,
    task_time,
)
from .oracle import OracleResult, TooLargeError, solve_exhaustive
from .workload import (
    GeneratorRanges,
    HostSpec,
    InstanceFormatError,
    NamedConfig,
    SchemaVersionError,
    generate_instance,
    load_instance,
    table2_config,
    save_instance,
)

__version__ = "0.1.0"

__all__ = [
    "Assignment",
    "BnbConfig",
    "BnbNode",
    "BnbResult",
    "Caps",
    "Chromosome",
    "Evaluation",
    "GaParams",
    "GaResult",
    "GeneratorRanges",
    "HostSpec",
    "InfeasibleError",
    "Instance",
    "InstanceFormatError",
    "NamedConfig",
    "OracleResult",
    "QosWeights",
    "SchemaVersionError",
    "TaskSpec",
    "TooLargeError",
    "U_MAX",
    "VmSpec",
    "check_caps",
    "crossover",
    "evaluate",
    "generate_instance",
    "init_population",
    "load_instance",
    "lower_bound",
    "machine_load",
    "machine_utilization",
    "mutate",
    "table2_config",
    "replace_if_better",
    "round_robin_assignment",
    "save_instance",
    "select",
    "solve_bnb",
    "solve_exhaustive",
    "solve_ga",
    "task_cost",
    "task_time",
]
