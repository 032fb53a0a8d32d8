"""Instance construction: named machine presets, seeded random generation,
and the versioned JSON instance file format.

Units are normalized at this boundary: MIPS for compute, MB for memory and
data sizes (file sizes quoted in KB are divided by 1024 here), GB for
storage, MB/s for bandwidth. Field names in the file format carry their unit
suffix so nothing drifts silently.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .model import Caps, Instance, QosWeights, TaskSpec, VmSpec
from .rng import stream

SCHEMA_VERSION = 1

DEFAULT_WEIGHTS = QosWeights(1 / 3, 1 / 3, 1 / 3)

PRESETS = ("table2", "section5b")


class InstanceFormatError(ValueError):
    """Instance file rejected; the message names the offending field."""


class SchemaVersionError(InstanceFormatError):
    """Instance file written under an unsupported schema version."""


@dataclass(frozen=True)
class HostSpec:
    """Physical host capacities: cpu MIPS, mem MB, bw MB/s."""

    cpu: float
    mem: float
    bw: float


@dataclass(frozen=True)
class NamedConfig:
    """A fixed host plus its virtual machines."""

    host: HostSpec
    vms: tuple[VmSpec, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "vms", tuple(self.vms))
        if sum(vm.mem for vm in self.vms) > self.host.mem:
            raise ValueError("VM memory oversubscribes the host")


@dataclass(frozen=True)
class GeneratorRanges:
    """Uniform sampling ranges, all (lo, hi) inclusive.

    Task fields: length_mi, file_size_mb, output_size_mb (file sizes converted
    from the quoted 35..300 KB), req_* demands. VM fields feed the drawn-VM
    preset: cpu 20000..50000 MIPS, bandwidth repaired to [1, 10] MB/s (zero
    bandwidth would make transfer time infinite); memory, storage and the
    flat unit cost are package defaults, override as needed.
    """

    length_mi: tuple[float, float] = (100.0, 10000.0)
    file_size_mb: tuple[float, float] = (35 / 1024, 300 / 1024)
    output_size_mb: tuple[float, float] = (35 / 1024, 300 / 1024)
    req_cpu_mips: tuple[float, float] = (100.0, 1000.0)
    req_mem_mb: tuple[float, float] = (100.0, 2048.0)
    req_stor_gb: tuple[float, float] = (1.0, 50.0)
    req_bw_mbps: tuple[float, float] = (1.0, 10.0)
    vm_cpu_mips: tuple[float, float] = (20000.0, 50000.0)
    vm_mem_mb: tuple[float, float] = (2000.0, 8000.0)
    vm_stor_gb: tuple[float, float] = (100.0, 500.0)
    vm_bw_mbps: tuple[float, float] = (1.0, 10.0)
    vm_unit_cost: tuple[float, float] = (1.0, 1.0)

    def __post_init__(self) -> None:
        for name in self.__dataclass_fields__:
            lo, hi = getattr(self, name)
            if lo > hi:
                raise ValueError(f"{name}: lo {lo!r} exceeds hi {hi!r}")
            if lo < 0:
                raise ValueError(f"{name}: negative lower bound {lo!r}")
        if self.vm_bw_mbps[0] <= 0:
            raise ValueError("vm_bw_mbps must exclude zero bandwidth")
        if self.vm_cpu_mips[0] <= 0:
            raise ValueError("vm_cpu_mips must exclude zero compute power")


def table2_config() -> NamedConfig:
    """The fixed benchmark machines: one host and four VMs, unit prices 1.

    The preset pins CPU power and memory per VM; bandwidth and storage
    default to an equal quarter of the host bandwidth and 100 GB each.
    """
    host = HostSpec(cpu=150000.0, mem=256000.0, bw=2000.0)
    bw = host.bw / 4
    mems = (4000.0, 3000.0, 5000.0, 5000.0)
    cpus = (1024.0, 4096.0, 4096.0, 4096.0)
    vms = tuple(
        VmSpec(
            cpu=cpu,
            mem=mem,
            stor=100.0,
            comm=bw,
            cpu_cost=1.0,
            mem_cost=1.0,
            stor_cost=1.0,
            comm_cost=1.0,
        )
        for cpu, mem in zip(cpus, mems)
    )
    return NamedConfig(host, vms)


def generate_instance(
    n_tasks: int,
    config: NamedConfig | GeneratorRanges,
    seed: int,
    *,
    weights: QosWeights = DEFAULT_WEIGHTS,
    caps: Caps = Caps(),
    n_vms: int = 4,
    ranges: GeneratorRanges | None = None,
) -> Instance:
    """Seeded random instance.

    Tasks always come from the sampling ranges (``ranges`` overrides the
    defaults). VMs are either the named config's fixed machines (n_vms is
    ignored then) or n_vms machines drawn from the VM ranges. VM and task
    draws use separate derived streams, so changing n_vms never reshuffles
    the tasks for a given seed.
    """
    if n_tasks < 0:
        raise ValueError("n_tasks must be non-negative")
    task_ranges = ranges if ranges is not None else (
        config if isinstance(config, GeneratorRanges) else GeneratorRanges()
    )

    if isinstance(config, NamedConfig):
        vms = config.vms
    else:
        rng_vms = stream(seed, "vms")
        vms = tuple(
            VmSpec(
                cpu=rng_vms.uniform(*config.vm_cpu_mips),
                mem=rng_vms.uniform(*config.vm_mem_mb),
                stor=rng_vms.uniform(*config.vm_stor_gb),
                comm=rng_vms.uniform(*config.vm_bw_mbps),
                cpu_cost=rng_vms.uniform(*config.vm_unit_cost),
                mem_cost=rng_vms.uniform(*config.vm_unit_cost),
                stor_cost=rng_vms.uniform(*config.vm_unit_cost),
                comm_cost=rng_vms.uniform(*config.vm_unit_cost),
            )
            for _ in range(n_vms)
        )

    rng_tasks = stream(seed, "tasks")
    tasks = tuple(
        TaskSpec(
            req_cpu=rng_tasks.uniform(*task_ranges.req_cpu_mips),
            req_mem=rng_tasks.uniform(*task_ranges.req_mem_mb),
            req_stor=rng_tasks.uniform(*task_ranges.req_stor_gb),
            req_comm=rng_tasks.uniform(*task_ranges.req_bw_mbps),
            instruction_count=rng_tasks.uniform(*task_ranges.length_mi),
            data_size=rng_tasks.uniform(*task_ranges.file_size_mb),
            output_size=rng_tasks.uniform(*task_ranges.output_size_mb),
        )
        for _ in range(n_tasks)
    )
    return Instance(vms, tasks, weights, caps)


def preset_config(name: str) -> NamedConfig | GeneratorRanges:
    if name == "table2":
        return table2_config()
    if name == "section5b":
        return GeneratorRanges()
    raise ValueError(f"unknown preset {name!r}; expected one of {PRESETS}")


def _instance_doc(instance: Instance) -> dict:
    caps: dict = {}
    if instance.caps.max_time is not None:
        caps["max_time_s"] = instance.caps.max_time
    if instance.caps.budget is not None:
        caps["budget"] = instance.caps.budget
    w = instance.weights
    return {
        "version": SCHEMA_VERSION,
        "vms": [
            {
                "cpu_mips": vm.cpu,
                "mem_mb": vm.mem,
                "stor_gb": vm.stor,
                "bw_mbps": vm.comm,
                "cpu_cost": vm.cpu_cost,
                "mem_cost": vm.mem_cost,
                "stor_cost": vm.stor_cost,
                "bw_cost": vm.comm_cost,
            }
            for vm in instance.vms
        ],
        "tasks": [
            {
                "length_mi": t.instruction_count,
                "file_size_mb": t.data_size,
                "output_size_mb": t.output_size,
                "req_cpu_mips": t.req_cpu,
                "req_mem_mb": t.req_mem,
                "req_stor_gb": t.req_stor,
                "req_bw_mbps": t.req_comm,
            }
            for t in instance.tasks
        ],
        "weights": {
            "w_time": w.w_time,
            "w_cost": w.w_cost,
            "w_load": w.w_load,
            "lw_cpu": w.lw_cpu,
            "lw_mem": w.lw_mem,
            "lw_bw": w.lw_bw,
        },
        "caps": caps,
    }


def save_instance(instance: Instance, path) -> None:
    """Write the instance as versioned JSON; same instance, same bytes."""
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(_instance_doc(instance), fh, indent=2)
        fh.write("\n")


def _num(doc: dict, where: str, key: str, optional: bool = False):
    if key not in doc:
        if optional:
            return None
        raise InstanceFormatError(f"{where}: missing field {key!r}")
    value = doc[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise InstanceFormatError(f"{where}.{key}: expected a number, got {value!r}")
    return float(value)


def load_instance(path) -> Instance:
    """Parse and validate an instance file written by save_instance.

    Raises InstanceFormatError naming the bad field (with the JSON line for
    syntax errors) and SchemaVersionError for unknown versions.
    """
    with open(path, "r", encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InstanceFormatError(
                f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"
            ) from exc
    if not isinstance(doc, dict):
        raise InstanceFormatError(f"{path}: top level must be an object")
    version = doc.get("version")
    if version != SCHEMA_VERSION:
        raise SchemaVersionError(
            f"{path}: schema version {version!r} not supported (expected {SCHEMA_VERSION})"
        )

    vms = []
    for idx, rec in enumerate(doc.get("vms", [])):
        where = f"vms[{idx}]"
        if not isinstance(rec, dict):
            raise InstanceFormatError(f"{where}: expected an object")
        try:
            vms.append(
                VmSpec(
                    cpu=_num(rec, where, "cpu_mips"),
                    mem=_num(rec, where, "mem_mb"),
                    stor=_num(rec, where, "stor_gb"),
                    comm=_num(rec, where, "bw_mbps"),
                    cpu_cost=_num(rec, where, "cpu_cost"),
                    mem_cost=_num(rec, where, "mem_cost"),
                    stor_cost=_num(rec, where, "stor_cost"),
                    comm_cost=_num(rec, where, "bw_cost"),
                )
            )
        except ValueError as exc:
            raise InstanceFormatError(f"{where}: {exc}") from exc

    tasks = []
    for idx, rec in enumerate(doc.get("tasks", [])):
        where = f"tasks[{idx}]"
        if not isinstance(rec, dict):
            raise InstanceFormatError(f"{where}: expected an object")
        try:
            tasks.append(
                TaskSpec(
                    req_cpu=_num(rec, where, "req_cpu_mips"),
                    req_mem=_num(rec, where, "req_mem_mb"),
                    req_stor=_num(rec, where, "req_stor_gb"),
                    req_comm=_num(rec, where, "req_bw_mbps"),
                    instruction_count=_num(rec, where, "length_mi"),
                    data_size=_num(rec, where, "file_size_mb"),
                    output_size=_num(rec, where, "output_size_mb"),
                )
            )
        except ValueError as exc:
            raise InstanceFormatError(f"{where}: {exc}") from exc

    wdoc = doc.get("weights")
    if not isinstance(wdoc, dict):
        raise InstanceFormatError("weights: missing or not an object")
    try:
        weights = QosWeights(
            w_time=_num(wdoc, "weights", "w_time"),
            w_cost=_num(wdoc, "weights", "w_cost"),
            w_load=_num(wdoc, "weights", "w_load"),
            lw_cpu=_num(wdoc, "weights", "lw_cpu"),
            lw_mem=_num(wdoc, "weights", "lw_mem"),
            lw_bw=_num(wdoc, "weights", "lw_bw"),
        )
    except ValueError as exc:
        raise InstanceFormatError(f"weights: {exc}") from exc

    cdoc = doc.get("caps", {})
    if not isinstance(cdoc, dict):
        raise InstanceFormatError("caps: expected an object")
    caps = Caps(
        max_time=_num(cdoc, "caps", "max_time_s", optional=True),
        budget=_num(cdoc, "caps", "budget", optional=True),
    )

    try:
        return Instance(tuple(vms), tuple(tasks), weights, caps)
    except ValueError as exc:
        raise InstanceFormatError(str(exc)) from exc
