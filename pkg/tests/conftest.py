"""Shared builders for randomized instances used across the suite."""

import random

from qos_sched.model import Caps, Instance, QosWeights, TaskSpec, VmSpec


def make_weights(rng: random.Random) -> QosWeights:
    a, b, c = rng.random(), rng.random(), rng.random()
    s = a + b + c
    if s == 0:
        return QosWeights(1.0, 0.0, 0.0)
    return QosWeights(
        a / s, b / s, c / s,
        rng.uniform(0.0, 2.0), rng.uniform(0.0, 2.0), rng.uniform(0.0, 2.0),
    )


def make_vm(rng: random.Random) -> VmSpec:
    return VmSpec(
        cpu=rng.uniform(0.5, 100.0),
        mem=rng.uniform(0.5, 100.0),
        stor=rng.uniform(0.5, 100.0),
        comm=rng.uniform(0.5, 100.0),
        cpu_cost=rng.uniform(0.0, 3.0),
        mem_cost=rng.uniform(0.0, 3.0),
        stor_cost=rng.uniform(0.0, 3.0),
        comm_cost=rng.uniform(0.0, 3.0),
    )


def make_task(rng: random.Random) -> TaskSpec:
    return TaskSpec(
        req_cpu=rng.uniform(0.0, 50.0),
        req_mem=rng.uniform(0.0, 50.0),
        req_stor=rng.uniform(0.0, 50.0),
        req_comm=rng.uniform(0.0, 50.0),
        instruction_count=rng.uniform(0.0, 200.0),
        data_size=rng.uniform(0.0, 50.0),
    )


def make_instance(
    rng: random.Random,
    n_vms: int | None = None,
    n_tasks: int | None = None,
    caps: Caps = Caps(),
) -> Instance:
    m = n_vms if n_vms is not None else rng.randint(1, 4)
    n = n_tasks if n_tasks is not None else rng.randint(0, 6)
    return Instance(
        tuple(make_vm(rng) for _ in range(m)),
        tuple(make_task(rng) for _ in range(n)),
        make_weights(rng),
        caps,
    )


def make_assignment(rng: random.Random, instance: Instance) -> tuple[int, ...]:
    m = instance.n_vms
    return tuple(rng.randrange(m) for _ in range(instance.n_tasks))
