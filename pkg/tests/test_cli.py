import json

import pytest

from netctrl import cli, report
from netctrl.structural_analysis import Decision, Route, Verdict
from netctrl.topology import connected_components

STAR = "nodes 4\nleaders 4\nedge 1 4\nedge 1 2\nedge 1 3\n"
DISCONNECTED = "nodes 5\nleaders 5\nedge 1 2\nedge 3 4\nedge 1 5\n"


@pytest.fixture
def star_file(tmp_path):
    path = tmp_path / "star.top"
    path.write_text(STAR, encoding="utf-8")
    return str(path)


@pytest.fixture
def disconnected_file(tmp_path):
    path = tmp_path / "disconnected.top"
    path.write_text(DISCONNECTED, encoding="utf-8")
    return str(path)


def test_analyze(star_file, capsys):
    assert cli.main(["analyze", "--input", star_file, "--no-timings"]) == cli.EXIT_OK
    first = capsys.readouterr().out
    payload = json.loads(first)
    assert payload["agreement"]
    assert payload["oracle"]["decision"] == "StructurallyControllable"
    assert cli.main(["analyze", "--input", star_file, "--no-timings"]) == cli.EXIT_OK
    assert capsys.readouterr().out == first


def test_analyze_seed_keeps_the_verdict(star_file, disconnected_file, capsys):
    for path, expected in ((star_file, True), (disconnected_file, False)):
        for seed in ("0", "1", "12345"):
            argv = ["analyze", "--input", path, "--seed", seed, "--no-timings"]
            assert cli.main(argv) == cli.EXIT_OK
            payload = json.loads(capsys.readouterr().out)
            assert payload["oracle"]["controllable"] is expected
            assert payload["oracle"]["seed"] == int(seed)
            assert payload["agreement"]


def test_analyze_to_file(disconnected_file, tmp_path, capsys):
    out = tmp_path / "report.json"
    argv = ["analyze", "--input", disconnected_file, "--out", str(out)]
    assert cli.main(argv + ["--oracle-trials", "0"]) == cli.EXIT_OK
    assert capsys.readouterr().out == ""
    payload = json.loads(out.read_text(encoding="utf-8"))
    assert payload["oracle"] is None
    assert "timings_ms" in payload
    assert payload["certificate"]["decision"] == "NotStructurallyControllable"


def test_analyze_rank_cap(star_file, capsys):
    argv = ["analyze", "--input", star_file, "--rank-cap", "1", "--no-timings"]
    assert cli.main(argv) == cli.EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload["certificate"]["decision"] == "Inconclusive"
    assert payload["certificate"]["rank_cap"] == 1


def test_analyze_disagreement(star_file, monkeypatch, capsys):
    def wrong_theorem(topology):
        return Verdict(
            decision=Decision.NOT_STRUCTURALLY_CONTROLLABLE,
            route=Route.THEOREM_SHORTCUT,
            components=connected_components(topology),
        )

    monkeypatch.setattr(report, "theorem_decision", wrong_theorem)
    exit_code = cli.main(["analyze", "--input", star_file, "--no-timings"])
    assert exit_code == cli.EXIT_DISAGREEMENT
    assert not json.loads(capsys.readouterr().out)["agreement"]


def test_input_errors(tmp_path, star_file, caplog):
    missing = str(tmp_path / "missing.top")
    assert cli.main(["analyze", "--input", missing]) == cli.EXIT_INPUT_ERROR
    invalid = tmp_path / "invalid.top"
    invalid.write_text("nodes 3\nleaders 3\nedge 1 1\n", encoding="utf-8")
    assert cli.main(["analyze", "--input", str(invalid)]) == cli.EXIT_INPUT_ERROR
    assert "line 3" in caplog.text
    argv = ["simulate", "--input", star_file, "--weights", "1,1,1"]
    assert cli.main(argv + ["--x0", "0,0,1", "--tf", "1"]) == cli.EXIT_INPUT_ERROR
    assert cli.main(argv + ["--x0", "a,0,0,1", "--tf", "1"]) == cli.EXIT_INPUT_ERROR
    argv = ["simulate", "--input", star_file, "--weights", "1,0,1"]
    assert cli.main(argv + ["--x0", "0,0,0,1", "--tf", "1"]) == cli.EXIT_INPUT_ERROR


def test_export(star_file, capsys):
    assert cli.main(["export", "--input", star_file, "--what", "flow"]) == cli.EXIT_OK
    text = capsys.readouterr().out
    assert text.startswith("digraph flow {\n")
    assert '  v4 -> v1 [label="w3"];' in text.splitlines()
    with pytest.raises(SystemExit):
        cli.main(["export", "--input", star_file, "--what", "kalman"])


def test_simulate(star_file, capsys):
    argv = ["simulate", "--input", star_file, "--weights", "1,1,1"]
    argv += ["--x0", "0,0,0,1", "--tf", "2", "--dt", "0.5"]
    assert cli.main(argv) == cli.EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "t,x1,x2,x3,x4"
    assert len(lines) == 6
    assert lines[1] == "0,0,0,0,1"


def test_simulate_steering(star_file, tmp_path, capsys):
    plan_path = tmp_path / "plan.csv"
    argv = ["simulate", "--input", star_file, "--weights", "1,2,3"]
    argv += ["--x0", "0,0,0,0", "--target", "1,2,3", "--tf", "5"]
    argv += ["--plan-out", str(plan_path)]
    assert cli.main(argv) == cli.EXIT_OK
    captured = capsys.readouterr()
    assert captured.out.startswith("t,x1,x2,x3,x4\n")
    assert "Gramian rank 3" in captured.err
    plan_lines = plan_path.read_text(encoding="utf-8").splitlines()
    assert plan_lines[0] == "t,u1"
    assert len(plan_lines) == 1001


def test_simulate_steering_infeasible(star_file, disconnected_file):
    argv = ["--x0", "0,0,0,0", "--target", "1,2,3", "--tf", "5"]
    exit_code = cli.main(
        ["simulate", "--input", star_file, "--weights", "1,1,1"] + argv
    )
    assert exit_code == cli.EXIT_STEERING_INFEASIBLE
    argv = ["--x0", "0,0,0,0,0", "--target", "1,1,1,2", "--tf", "5"]
    exit_code = cli.main(
        ["simulate", "--input", disconnected_file, "--weights", "random:1"] + argv
    )
    assert exit_code == cli.EXIT_STEERING_INFEASIBLE
