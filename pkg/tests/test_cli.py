import json
import subprocess
import sys

import pytest

from hypercube_walk.cli import main
from hypercube_walk.experiments import ExperimentResult


def run_cli(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_walk_csv(capsys):
    code, out, err = run_cli(capsys, "walk", "--n", "10", "--marked", "0", "--selfloop", "single",
                             "--steps", "200", "--output", "csv")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "step,p_marked,p_neighbor,p_neither"
    assert len(lines) == 202
    assert lines[1] == "0,0.000977,0.009766,0.989258"
    assert max(float(line.split(",")[1]) for line in lines[1:]) == pytest.approx(0.999, abs=0.001)
    assert "peak_probability=0.999" in err
    for line in lines[1:]:
        assert all(len(field.split(".")[1]) == 6 for field in line.split(",")[1:])


def test_walk_out_of_range(capsys):
    code, out, err = run_cli(capsys, "walk", "--n", "10", "--marked", "2048")
    assert code == 2 and out == ""
    assert "vertex index out of range" in err and "marked" in err


@pytest.mark.parametrize("argv,field", [
    (["walk", "--n", "10", "--marked", "nonadjacent:3"], "seed"),
    (["walk", "--n", "2", "--marked", "nonadjacent:3", "--seed", "1"], "infeasible"),
    (["walk", "--n", "10", "--marked", "adjacent:20"], "j must be"),
    (["walk", "--n", "10", "--marked", "0", "--selfloop", "sideways"], "selfloop"),
    (["scenario", "nope"], "scenario"),
    (["grid", "--k-max", "2"], "seed"),
])
def test_configuration_errors(capsys, argv, field):
    code, _, err = run_cli(capsys, *argv)
    assert code == 2 and field in err


def test_scenario_fig6b_json(capsys):
    code, out, _ = run_cli(capsys, "scenario", "fig6b", "--seed", "42", "--output", "json")
    assert code == 0
    data = json.loads(out)
    assert data["name"] == "fig6b" and len(data["series"]) == 10
    peaks = {row["label"]: row["peak_probability"] for row in data["summary"]}
    assert peaks["k=11"] == pytest.approx(0.945, abs=0.005)
    assert ExperimentResult.from_json(out).to_json() + "\n" == out


def test_generator_specs(capsys):
    code, out, _ = run_cli(capsys, "walk", "--n", "10", "--marked", "mixed:3,2", "--seed", "5",
                           "--selfloop", "optimal", "--steps", "20", "--output", "json")
    assert code == 0
    walk = json.loads(out)["parameters"]["walks"]["walk"]
    assert len(walk["marked"]) == 5 and walk["l"] == pytest.approx(50 / 1024)


def test_out_file(tmp_path, capsys):
    target = tmp_path / "grid.json"
    code, out, _ = run_cli(capsys, "grid", "--k-max", "2", "--steps", "30", "--seed", "3",
                           "--output", "json", "--out", str(target))
    assert code == 0 and out == ""
    assert len(json.loads(target.read_text())["series"]) == 4


def test_sweep_command(capsys):
    code, out, _ = run_cli(capsys, "sweep", "--k", "2", "--alphas", "1-3", "--seed", "1",
                           "--steps", "200")
    assert code == 0
    assert out.splitlines()[0].startswith("label,step")


def test_module_entry_point_is_byte_deterministic():
    argv = [sys.executable, "-m", "hypercube_walk", "walk", "--n", "8", "--marked", "nonadjacent:3",
            "--seed", "11", "--selfloop", "optimal", "--steps", "50", "--output", "json"]
    first = subprocess.run(argv, capture_output=True, check=True).stdout
    second = subprocess.run(argv, capture_output=True, check=True).stdout
    assert first == second and first
