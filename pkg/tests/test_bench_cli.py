import csv
import json
import subprocess
import sys

import pytest

from qos_sched.bench import CSV_COLUMNS, read_csv, run_bench, write_csv
from qos_sched.charts import render_charts
from qos_sched.cli import main
from qos_sched.workload import load_instance, table2_config


# --- bench harness -----------------------------------------------------------

def test_grid_produces_one_record_per_cell():
    records = run_bench([3, 5], ["ga", "bnb"], 2, config=table2_config())
    assert len(records) == 8
    keys = [(r.n_tasks, r.solver, r.seed) for r in records]
    assert keys == sorted(keys)
    assert all(r.status == "ok" for r in records)


def test_bnb_rows_above_the_task_cap_are_skipped():
    records = run_bench([3, 9], ["bnb"], 1, config=table2_config(), bnb_max_tasks=4)
    by_n = {r.n_tasks: r for r in records}
    assert by_n[3].status == "ok"
    assert by_n[9].status == "skipped"
    assert by_n[9].scalar is None


def test_brute_rows_over_the_guard_become_status_rows():
    records = run_bench([13], ["brute"], 1, config=table2_config())
    assert records[0].status == "too_large"
    assert records[0].wall_clock_ms is None


def test_solvers_share_the_cell_instance():
    records = run_bench([4, 6], ["bnb", "brute"], 3, config=table2_config())
    cells = {(r.n_tasks, r.solver, r.seed): r for r in records}
    for n in (4, 6):
        for seed in range(3):
            bnb = cells[(n, "bnb", seed)]
            brute = cells[(n, "brute", seed)]
            assert bnb.scalar == pytest.approx(brute.scalar, abs=1e-9)
            assert bnb.proven_optimal and brute.proven_optimal


def test_unknown_solver_is_rejected():
    with pytest.raises(ValueError):
        run_bench([2], ["simulated-annealing"], 1, config=table2_config())


def test_csv_round_trip(tmp_path):
    records = run_bench([2, 13], ["brute", "ga"], 2, config=table2_config())
    path = tmp_path / "bench.csv"
    write_csv(records, path)
    assert read_csv(path) == records
    header = path.read_text().splitlines()[0]
    assert header == ",".join(CSV_COLUMNS)


def test_csv_schema_check(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("foo,bar\n1,2\n")
    with pytest.raises(ValueError, match="header"):
        read_csv(path)


# --- charts ---------------------------------------------------------------------

def test_charts_are_a_pure_function_of_the_csv(tmp_path):
    records = run_bench([2, 4], ["bnb", "ga"], 2, config=table2_config())
    path = tmp_path / "bench.csv"
    write_csv(records, path)
    first = render_charts(path, tmp_path / "one")
    second = render_charts(path, tmp_path / "two")
    assert [p.rsplit("/", 1)[-1] for p in first] == [
        "time_vs_tasks.svg",
        "cost_vs_tasks.svg",
        "load_vs_tasks.svg",
    ]
    for a, b in zip(first, second):
        blob = open(a, "rb").read()
        assert blob == open(b, "rb").read()
        assert blob.startswith(b"<?xml")
        assert b'version="1.1"' in blob


# --- CLI ---------------------------------------------------------------------------

def test_gen_writes_a_valid_instance_and_stable_digest(tmp_path, capsys):
    out = tmp_path / "i.json"
    argv = ["gen", "--tasks", "10", "--preset", "table2", "--seed", "7", "-o", str(out)]
    assert main(argv) == 0
    digest1 = capsys.readouterr().out.strip()
    inst = load_instance(out)
    assert inst.n_tasks == 10
    assert inst.n_vms == 4
    assert main(argv) == 0
    assert capsys.readouterr().out.strip() == digest1
    assert "sha256=" in digest1


def test_gen_zero_tasks(tmp_path):
    out = tmp_path / "empty.json"
    assert main(["gen", "--tasks", "0", "-o", str(out)]) == 0
    assert load_instance(out).n_tasks == 0


def test_gen_with_caps_and_weights(tmp_path):
    out = tmp_path / "i.json"
    assert main([
        "gen", "--tasks", "3", "-o", str(out),
        "--weights", "0.5,0.25,0.25", "--load-weights", "2,1,1",
        "--max-time", "50", "--budget", "200",
    ]) == 0
    inst = load_instance(out)
    assert inst.weights.w_time == 0.5
    assert inst.weights.lw_cpu == 2.0
    assert inst.caps.max_time == 50.0
    assert inst.caps.budget == 200.0


def test_bad_weights_exit_usage(tmp_path):
    out = tmp_path / "i.json"
    assert main(["gen", "--tasks", "2", "-o", str(out), "--weights", "0.9,0.9,0.9"]) == 2


def test_unknown_flag_exits_2(tmp_path):
    with pytest.raises(SystemExit) as exc:
        main(["gen", "--tasks", "2", "--frobnicate"])
    assert exc.value.code == 2


def _gen(tmp_path, n, seed=7, extra=()):
    path = tmp_path / f"i{n}_{seed}.json"
    assert main(["gen", "--tasks", str(n), "--seed", str(seed), "-o", str(path), *extra]) == 0
    return path


def test_solve_bnb_matches_brute(tmp_path, capsys):
    inst = _gen(tmp_path, 8)
    capsys.readouterr()  # drop the gen output
    assert main(["solve", str(inst), "--algo", "brute"]) == 0
    brute_out = capsys.readouterr().out
    assert main(["solve", str(inst), "--algo", "bnb"]) == 0
    bnb_out = capsys.readouterr().out
    brute_scalar = float(next(l for l in brute_out.splitlines() if l.startswith("scalar")).split()[1])
    bnb_scalar = float(next(l for l in bnb_out.splitlines() if l.startswith("scalar")).split()[1])
    assert bnb_scalar == pytest.approx(brute_scalar, abs=1e-9)
    assert "proven_optimal  true" in bnb_out


def test_solve_ga_reports_are_reproducible(tmp_path, capsys):
    inst = _gen(tmp_path, 10)
    capsys.readouterr()  # drop the gen output
    rep1 = tmp_path / "r1.json"
    rep2 = tmp_path / "r2.json"
    assert main(["solve", str(inst), "--algo", "ga", "--seed", "5", "-o", str(rep1)]) == 0
    out1 = capsys.readouterr().out
    assert main(["solve", str(inst), "--algo", "ga", "--seed", "5", "-o", str(rep2)]) == 0
    out2 = capsys.readouterr().out
    assert rep1.read_bytes().replace(b"r1.json", b"") == rep2.read_bytes().replace(b"r2.json", b"")
    assert out1.replace("r1.json", "") == out2.replace("r2.json", "")
    report = json.loads(rep1.read_text())
    assert report["algo"] == "ga"
    assert len(report["assignment"]) == 10
    assert report["stats"]["seed"] == 5


def test_solve_brute_too_large_exits_4(tmp_path):
    inst = _gen(tmp_path, 20)
    assert main(["solve", str(inst), "--algo", "brute"]) == 4


def test_solve_infeasible_exits_3(tmp_path):
    inst = _gen(tmp_path, 2, extra=["--budget", "0.000001"])
    assert main(["solve", str(inst), "--algo", "bnb"]) == 3
    assert main(["solve", str(inst), "--algo", "brute"]) == 3


def test_solve_missing_file_exits_2(tmp_path):
    assert main(["solve", str(tmp_path / "nope.json"), "--algo", "bnb"]) == 2


def test_solve_corrupt_file_exits_2(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["solve", str(bad), "--algo", "ga"]) == 2


def _mask_wall_clock(path):
    rows = list(csv.reader(open(path, newline="")))
    col = rows[0].index("wall_clock_ms")
    for row in rows[1:]:
        row[col] = ""
    return rows


def test_bench_cli_spec_example_grid(tmp_path):
    out = tmp_path / "bench"
    argv = [
        "bench", "--tasks", "4,8,12", "--solvers", "bnb,ga,brute",
        "--seeds", "5", "-o", str(out),
    ]
    assert main(argv) == 0
    records = read_csv(out / "bench.csv")
    assert len(records) == 45
    cells = {(r.n_tasks, r.solver, r.seed): r for r in records}
    # exhaustive enumeration of 4^12 is over the guard: status row, run continued
    assert cells[(12, "brute", 0)].status == "too_large"
    for n in (4, 8):
        for seed in range(5):
            assert cells[(n, "bnb", seed)].scalar == pytest.approx(
                cells[(n, "brute", seed)].scalar, abs=1e-9
            )
    for name in ("time_vs_tasks.svg", "cost_vs_tasks.svg", "load_vs_tasks.svg"):
        assert (out / name).exists()


def test_bench_rerun_is_identical_outside_wall_clock(tmp_path):
    args = ["bench", "--tasks", "3,5", "--solvers", "bnb,ga,brute", "--seeds", "2"]
    out1 = tmp_path / "one"
    out2 = tmp_path / "two"
    assert main(args + ["-o", str(out1)]) == 0
    assert main(args + ["-o", str(out2)]) == 0
    assert _mask_wall_clock(out1 / "bench.csv") == _mask_wall_clock(out2 / "bench.csv")
    for name in ("time_vs_tasks.svg", "cost_vs_tasks.svg", "load_vs_tasks.svg"):
        assert (out1 / name).read_bytes() == (out2 / name).read_bytes()


def test_module_entry_point_runs(tmp_path):
    out = tmp_path / "i.json"
    proc = subprocess.run(
        [sys.executable, "-m", "qos_sched", "gen", "--tasks", "3", "-o", str(out)],
        capture_output=True,
        text=True,
        env={"PATH": "/usr/bin:/bin", "QOS_SCHED_LOG": "INFO"},
    )
    assert proc.returncode == 0, proc.stderr
    assert "sha256=" in proc.stdout
    assert out.exists()
