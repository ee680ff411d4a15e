import json
from fractions import Fraction as F

import pytest
from click.testing import CliRunner
from loguru import logger

from main import cli

EXAMPLE = ["--antennas", "3,3,2,2", "--alpha", "1,3/5,3/5,1"]


@pytest.fixture
def runner(monkeypatch):
    monkeypatch.delenv("GDOF_SEED", raising=False)
    yield CliRunner()
    # The CLI attaches a stderr sink bound to the runner's temporary stream.
    logger.remove()


def payload(result) -> str:
    """Command output without log lines; click < 8.2 mixes stderr into stdout."""
    return "\n".join(line for line in result.stdout.splitlines() if " | " not in line)


def exact(value):
    return F(value["num"], value["den"])


def test_region_json(runner):
    result = runner.invoke(cli, ["region", *EXAMPLE, "--format", "json"])
    assert result.exit_code == 0, result.output
    data = json.loads(result.stdout)
    vertices = [tuple(exact(v) for v in point) for point in data["vertices"]]
    assert (F(9, 5), F(8, 5)) in vertices
    assert len(data["halfspaces"]) == 7


def test_region_bound7_option(runner):
    args = ["region", "--antennas", "1,1,2,1", "--alpha", "1,1/2,1/2,1", "--bound7", "transposed"]
    result = runner.invoke(cli, args)
    assert result.exit_code == 0
    rhs = exact(json.loads(result.stdout)["halfspaces"][6]["rhs"])
    assert rhs == 3


def test_region_table(runner):
    result = runner.invoke(cli, ["region", *EXAMPLE, "--format", "table"])
    assert result.exit_code == 0
    assert "sum3" in result.stdout


def test_split_witness(runner):
    result = runner.invoke(cli, ["split", *EXAMPLE, "--point", "1,2"])
    assert result.exit_code == 0, result.output
    data = json.loads(result.stdout)
    assert data["feasible"] is True
    w = {k: exact(v) for k, v in data["witness"].items()}
    assert w["d1p"] + w["d1c"] == 1 and w["d2p"] + w["d2c"] == 2
    assert all(value >= 0 for value in w.values())


def test_curve_csv(runner):
    result = runner.invoke(cli, ["curve", "--antennas", "1,1,1,1", "--alphas", "0,1/2,2/3,1,2", "--format", "csv"])
    assert result.exit_code == 0
    lines = result.stdout.splitlines()
    assert lines[0] == "alpha,d_s"
    assert lines[1:] == ["0,1", "0.5,0.5", "0.6666666667,0.6666666667", "1,0.5", "2,1"]


@pytest.mark.parametrize("args", [
    ["dof", "--antennas", "4,2,3,5"],
    ["dof", "--antennas", "4,2,3,5", "--raw"],
    ["siso", "--alpha", "1,1/2,3/2,1"],
    ["mac", "--antennas", "2,2,3", "--alpha", "1/2"],
    ["tin", "--m", "3", "--n", "2", "--alpha", "2/5"],
    ["insight", "v-curve-1121"],
    ["insight", "w-curve-MgeN", "--m", "3", "--n", "2", "--format", "csv"],
])
def test_commands_succeed(runner, args):
    result = runner.invoke(cli, args)
    assert result.exit_code == 0, result.output
    assert result.stdout.strip()


def test_mac_vertices(runner):
    result = runner.invoke(cli, ["mac", "--antennas", "2,2,5", "--alpha", "1/2", "--format", "csv"])
    assert result.stdout.splitlines() == ["d1,d2", "0,0", "2,0", "2,1", "0,1"]


@pytest.mark.parametrize("args", [
    ["region", "--antennas", "3,3,2,2", "--alpha", "2,1,1,1"],
    ["region", "--antennas", "3,3,2,2", "--alpha", "1,abc,1,1"],
    ["region", "--antennas", "3,3,0,2"],
    ["split", *EXAMPLE, "--point", "1"],
    ["mac", "--antennas", "2,2", "--alpha", "1/2"],
    ["insight", "w-curve-MgeN", "--m", "2", "--n", "3"],
])
def test_invalid_input_exit_2(runner, args):
    result = runner.invoke(cli, args)
    assert result.exit_code == 2
    assert "Error" in result.output


def test_unknown_command_exit_2(runner):
    assert runner.invoke(cli, ["plot"]).exit_code == 2


def test_verify_deterministic(runner):
    args = ["verify", "--suite", "mac-region", "--trials", "2", "--seed", "7"]
    first = runner.invoke(cli, args)
    second = runner.invoke(cli, args)
    assert first.exit_code == 0, first.output
    assert first.stdout == second.stdout
    data = json.loads(first.stdout)
    assert data["suite"] == "mac-region" and data["pass"] is True


def test_verify_legacy_suite_name(runner):
    args = ["verify", "--suite", "lemma5", "--trials", "5", "--seed", "7"]
    first = runner.invoke(cli, args)
    second = runner.invoke(cli, args)
    assert first.exit_code != 2, first.output
    assert first.exit_code == second.exit_code
    assert payload(first) == payload(second)
    assert json.loads(payload(first))["suite"] == "mac3"


def test_verify_outer_bounds_defaults_pass(runner):
    result = runner.invoke(cli, ["verify", "--suite", "outer-bounds"])
    assert result.exit_code == 0, result.output
    data = json.loads(payload(result))
    assert [v["pass"] for v in data["verdicts"]] == [True] * 7


def test_verify_failure_exit_1(runner):
    result = runner.invoke(cli, ["verify", "--suite", "mac2", "--trials", "1", "--tolerance", "1e-12"])
    assert result.exit_code == 1


def test_seed_env_overrides_flag(runner, monkeypatch):
    args = ["verify", "--suite", "mac2", "--trials", "1", "--format", "csv"]
    monkeypatch.setenv("GDOF_SEED", "4")
    from_env = runner.invoke(cli, args + ["--seed", "99"]).stdout
    monkeypatch.delenv("GDOF_SEED")
    from_flag = runner.invoke(cli, args + ["--seed", "4"]).stdout
    assert from_env == from_flag


def test_version(runner):
    result = runner.invoke(cli, ["version"])
    assert result.exit_code == 0
    assert "Version" in result.stdout


def test_verbose_echoes_info_records(runner):
    args = ["verify", "--suite", "mac2", "--trials", "1"]
    assert "verify suite=mac2" not in runner.invoke(cli, args).output
    verbose = runner.invoke(cli, ["--log-level", "info", "-v", *args])
    assert "verify suite=mac2" in verbose.output
