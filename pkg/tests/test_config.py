import json
from fractions import Fraction as F

import pytest
from pydantic import ValidationError

from config import AppConfig, Command, OutputFormat, RunConfig, VerifyConfig, load_run_config


def test_verify_defaults(monkeypatch):
    monkeypatch.delenv("GDOF_SEED", raising=False)
    cfg = VerifyConfig()
    assert (cfg.seed, cfg.rho_lo, cfg.rho_hi, cfg.trials, cfg.tolerance, cfg.workers) == (0, 1e6, 1e9, 5, 0.05, 1)


def test_env_prefix(monkeypatch):
    monkeypatch.setenv("GDOF_TRIALS", "9")
    monkeypatch.setenv("GDOF_APP_LOG_LEVEL", "DEBUG")
    assert VerifyConfig().trials == 9
    assert AppConfig().log_level == "DEBUG"


def test_run_config_parses_exact_rationals():
    run = RunConfig(command="region", antennas="3,3,2,2", alpha="1,3/5,0.6,1")
    assert run.command is Command.REGION
    assert run.antennas == (3, 3, 2, 2)
    assert run.alpha == (1, F(3, 5), F(3, 5), 1)
    assert run.format is OutputFormat.JSON


@pytest.mark.parametrize("kwargs", [
    dict(alpha="2,1,1,1"),
    dict(alpha="1,abc,1,1"),
    dict(alpha=[1, 0.6, 1, 1]),
    dict(alpha="1,-1,1,1"),
    dict(antennas="3,3,2"),
    dict(antennas="3,0,2,2"),
    dict(rho_lo=1e9, rho_hi=1e6),
    dict(format="xml"),
])
def test_run_config_rejects(kwargs):
    with pytest.raises(ValidationError):
        RunConfig(command="region", **kwargs)


def test_unknown_command_rejected():
    with pytest.raises(ValidationError):
        RunConfig(command="plot")


def test_layering(tmp_path, monkeypatch):
    monkeypatch.delenv("GDOF_SEED", raising=False)
    path = tmp_path / "run.json"
    path.write_text(json.dumps({"antennas": [2, 2, 2, 2], "alpha": ["1", "1/2", "1/2", "1"], "seed": 3, "trials": 2}))

    from_file = load_run_config("verify", str(path))
    assert from_file.antennas == (2, 2, 2, 2)
    assert from_file.alpha[1] == F(1, 2)
    assert (from_file.seed, from_file.trials) == (3, 2)

    flagged = load_run_config("verify", str(path), seed=5, trials=None)
    assert (flagged.seed, flagged.trials) == (5, 2)

    monkeypatch.setenv("GDOF_SEED", "11")
    assert load_run_config("verify", str(path), seed=5).seed == 11


def test_bad_config_file(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("[1, 2]")
    with pytest.raises(ValueError):
        load_run_config("region", str(path))
    with pytest.raises(ValueError):
        load_run_config("region", str(tmp_path / "missing.json"))
