import json

import pytest

from src.cli.main import EXIT_CONFIG_ERROR, EXIT_GOLDEN_MISMATCH, EXIT_OK, main

SCENARIO = """
name = "tiny"
n = 2
n_list = [1, 2]
interim_users = [0]
checkers = ["user_simplicity"]
reps = 400
seed = 3

[mechanism]
kind = "c_k1_pa"
k = 1

[distribution]
kind = "uniform"
params = {{ lo = 0.0, hi = 1.0 }}

[strategies.miner]
name = "compliant"
params = {{ advice = "monopoly" }}

[grids]
value_points = 5
bid_points = 11
opp_samples = 5

[expect]
user_simplicity = {expected}
"""


@pytest.fixture
def workspace(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    return tmp_path


def write_scenario(directory, expected: str = "true"):
    path = directory / "tiny.toml"
    path.write_text(SCENARIO.format(expected=expected), encoding="utf-8")
    return path


def test_list_prints_the_library(capsys):
    assert main(["list"]) == EXIT_OK
    output = capsys.readouterr().out
    for section in ("mechanisms:", "miner strategies:", "checkers:"):
        assert section in output
    assert "  dra  (reserve, p_conceal)" in output
    assert "  equilibria" in output


def test_invalid_config_exits_with_config_error(workspace, capsys):
    path = workspace / "bad.toml"
    path.write_text(
        'name = "bad"\nseed = 1\n[mechanism]\nkind = "vickrey"\n'
        '[distribution]\nkind = "uniform"\n',
        encoding="utf-8",
    )
    assert main(["run", str(path)]) == EXIT_CONFIG_ERROR
    assert "mechanism.kind" in capsys.readouterr().err


def test_run_writes_reports(workspace):
    path = write_scenario(workspace)
    assert main(["run", str(path), "--out", "out"]) == EXIT_OK
    out = workspace / "out"
    curve = (out / "revenue_curves.csv").read_text(encoding="utf-8").splitlines()
    assert curve[0] == "scenario,n,mean,stderr,reps,seed"
    assert [line.split(",")[1] for line in curve[1:]] == ["1", "2"]
    interim = (out / "interim_0.csv").read_text(encoding="utf-8").splitlines()
    assert interim[0] == "v,x,p,se_x,se_p"
    assert len(interim) == 6
    verdict = json.loads((out / "verdicts.jsonl").read_text(encoding="utf-8"))
    assert verdict["scenario"] == "tiny"
    assert verdict["property_name"] == "user_simplicity"
    assert verdict["verdict"] == "NO_VIOLATION_FOUND"
    assert len(verdict["scenario_hash"]) == 64
    assert not (out / "matrix.txt").exists()


def test_cached_run_reproduces_reports_byte_for_byte(workspace):
    path = write_scenario(workspace)
    assert main(["run", str(path), "--out", "first"]) == EXIT_OK
    assert len(list((workspace / ".tfmlab_cache").glob("*.json"))) == 1
    assert main(["run", str(path), "--out", "second"]) == EXIT_OK
    assert main(["run", str(path), "--out", "fresh", "--no-cache"]) == EXIT_OK
    for name in ("revenue_curves.csv", "interim_0.csv", "verdicts.jsonl"):
        first = (workspace / "first" / name).read_bytes()
        assert (workspace / "second" / name).read_bytes() == first
        assert (workspace / "fresh" / name).read_bytes() == first


def test_seed_override_changes_the_estimates(workspace):
    path = write_scenario(workspace)
    main(["run", str(path), "--out", "a", "--no-cache"])
    main(["run", str(path), "--out", "b", "--no-cache", "--seed", "4"])
    first = (workspace / "a" / "revenue_curves.csv").read_text(encoding="utf-8")
    second = (workspace / "b" / "revenue_curves.csv").read_text(encoding="utf-8")
    assert first != second


def test_unexpected_verdict_exits_with_golden_mismatch(workspace):
    path = write_scenario(workspace, expected="false")
    assert main(["run", str(path), "--no-cache"]) == EXIT_GOLDEN_MISMATCH


def test_verify_prints_a_single_verdict(workspace, capsys):
    path = write_scenario(workspace)
    code = main(["verify", str(path), "--checker", "user_simplicity"])
    assert code == EXIT_OK
    verdict = json.loads(capsys.readouterr().out)
    assert verdict["property_name"] == "user_simplicity"
    assert verdict["search_budget"]["opp_samples"] == 5


def test_verify_rejects_suites(workspace):
    suite = workspace / "suite.toml"
    write_scenario(workspace)
    suite.write_text(
        '[suite]\nname = "s"\nscenarios = ["tiny.toml"]\n', encoding="utf-8"
    )
    assert main(["verify", str(suite), "--checker", "user_simplicity"]) == (
        EXIT_CONFIG_ERROR
    )


def test_equilibria_rankings_are_written(workspace):
    path = workspace / "bomb.toml"
    path.write_text(
        'name = "bomb"\nn = 2\ncheckers = ["equilibria"]\nreps = 400\nseed = 3\n'
        '[mechanism]\nkind = "bomb"\nreserve = 0.5\n'
        '[distribution]\nkind = "uniform"\n',
        encoding="utf-8",
    )
    assert main(["run", str(path), "--out", "out", "--no-cache"]) == EXIT_OK
    rows = (workspace / "out" / "rankings.csv").read_text(encoding="utf-8")
    header, *ranked = rows.splitlines()
    assert header.startswith("scenario,")
    assert len(ranked) == 2
    assert not (workspace / "out" / "equilibria.csv").exists()
