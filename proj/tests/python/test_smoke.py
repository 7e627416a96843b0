"""Smoke tests for the python module and the CLI pipeline."""

import json
import os
import subprocess
import sys

import pytest

module_dir = os.environ.get("CUBEAVOID_MODULE_DIR")
if module_dir:
    sys.path.insert(0, module_dir)

ca = pytest.importorskip("_cubeavoid")


def test_starting_cube_is_latin():
    cube = ca.starting_cube(3)
    assert cube.n == 6
    assert ca.is_latin(cube)
    assert cube.at(1, 1, 1) == 1


def test_starting_square_first_row():
    sq = ca.starting_square(2)
    assert sq[0] == [1, 2, 3, 4]
    assert sq[3] == [4, 3, 2, 1]


def test_subcubes_through_corner():
    assert ca.subcubes_through(2, 1, 1, 1) == [
        (1, 3, 1, 3, 1, 3),
        (1, 4, 1, 4, 1, 4),
    ]


def test_properties_all_pass():
    for name, ok in ca.verify_properties(2):
        assert ok, name


def test_generate_solve_verify():
    inst = ca.generate_instance(8, 1, "uniform", seed=7)
    inst.validate()
    res = ca.solve(inst, ca.Params.desk(), seed=7)
    assert res["ok"]
    cube = res["cube"]
    assert ca.is_latin(cube)
    assert ca.conflicts(cube, inst) == []


def test_oracle_agrees_on_tiny_orders():
    inst = ca.generate_instance(4, 1, "uniform", seed=11)
    witness = ca.backtracking_avoid(inst)
    assert witness is not None
    assert ca.is_latin(witness)
    assert ca.conflicts(witness, inst) == []


def test_inequality_evaluators():
    log_value, below_one = ca.union_bound_total(ca.Params.paper(), 2.0**31)
    assert below_one and log_value < 0
    assert ca.candidate_slack(ca.Params.paper(), 2.0**31) > 0


@pytest.fixture
def cli():
    path = os.environ.get("CUBEAVOID_CLI")
    if not path or not os.path.exists(path):
        pytest.skip("CUBEAVOID_CLI not set")
    return path


def test_cli_gen_solve_verify_roundtrip(cli, tmp_path):
    inst = tmp_path / "instance.json"
    out = tmp_path / "solution.json"
    r = subprocess.run(
        [cli, "gen", "-n", "8", "-m", "1", "--seed", "7", "-o", str(inst)],
        capture_output=True, text=True,
    )
    assert r.returncode == 0, r.stderr
    doc = json.loads(inst.read_text())
    assert doc["kind"] == "forbidden" and doc["n"] == 8

    r = subprocess.run(
        [cli, "solve", "-i", str(inst), "-o", str(out), "--seed", "3"],
        capture_output=True, text=True,
    )
    assert r.returncode == 0, r.stderr

    r = subprocess.run(
        [cli, "verify", "--latin", str(out), "--forbidden", str(inst)],
        capture_output=True, text=True,
    )
    assert r.returncode == 0, r.stdout + r.stderr
    assert "conflicts=0" in r.stdout


def test_cli_inspect_counts(cli, tmp_path):
    cube = tmp_path / "cube.json"
    r = subprocess.run(
        [cli, "solve", "-i", "/dev/stdin", "-o", str(cube)],
        input=json.dumps({"kind": "forbidden", "n": 6, "m": 0,
                          "cells": [[[[] for _ in range(6)] for _ in range(6)]
                                    for _ in range(6)]}),
        capture_output=True, text=True,
    )
    assert r.returncode == 0, r.stderr
    r = subprocess.run(
        [cli, "inspect", "-i", str(cube), "--what", "catalog-counts"],
        capture_output=True, text=True,
    )
    assert r.returncode == 0, r.stderr
    counts = json.loads(r.stdout)
    assert counts["first_half_column_blocks"] == 24  # 4n at t = 3
    assert counts["transversal_sets"] == 36


def test_cli_gen_rejects_m_above_n(cli):
    r = subprocess.run([cli, "gen", "-n", "8", "-m", "9"], capture_output=True, text=True)
    assert r.returncode == 1


def test_cli_gen_warns_on_odd_order(cli, tmp_path):
    out = tmp_path / "odd.json"
    r = subprocess.run(
        [cli, "gen", "-n", "7", "-m", "1", "-o", str(out)],
        capture_output=True, text=True,
    )
    assert r.returncode == 0
    assert "odd" in r.stderr


def test_cli_solve_failure_report_on_blocked_cell(cli, tmp_path):
    cells = [[[[] for _ in range(4)] for _ in range(4)] for _ in range(4)]
    cells[0][0][0] = [1, 2, 3, 4]
    inst = tmp_path / "blocked.json"
    inst.write_text(json.dumps({"kind": "forbidden", "n": 4, "m": 4, "cells": cells}))
    r = subprocess.run(
        [cli, "solve", "-i", str(inst), "--restarts", "2", "--attempts", "5"],
        capture_output=True, text=True,
    )
    assert r.returncode == 2
    report = json.loads(r.stderr)
    assert report["ok"] is False
    assert len(report["restarts"]) == 2


def test_cli_verify_flags_conflicts(cli, tmp_path):
    inst = tmp_path / "instance.json"
    cells = [[[[] for _ in range(4)] for _ in range(4)] for _ in range(4)]
    cells[0][0][0] = [1]  # the starting cube holds 1 at (1,1,1)
    inst.write_text(json.dumps({"kind": "forbidden", "n": 4, "m": 1, "cells": cells}))

    cube = ca.starting_cube(2)
    latin = tmp_path / "latin.json"
    latin.write_text(json.dumps({"kind": "latin", "n": 4, "cells": cube.to_lists()}))

    r = subprocess.run(
        [cli, "verify", "--latin", str(latin), "--forbidden", str(inst)],
        capture_output=True, text=True,
    )
    assert r.returncode == 3
    assert "conflicts=1" in r.stdout
