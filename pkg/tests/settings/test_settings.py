import pytest
from pydantic import ValidationError

from src.settings import (
    BaseNamedSettings,
    CheckerSettings,
    SimulationSettings,
    checker_settings,
)


@pytest.mark.parametrize(
    "name, prefix",
    [
        ("miner_simplicity", "MINER_SIMPLICITY_"),
        ("off-chain influence", "OFF_CHAIN_INFLUENCE_"),
        ("--x--", "X_"),
    ],
)
def test_env_prefix_follows_the_name(name, prefix):
    assert BaseNamedSettings.env_prefix_for(name) == prefix


def test_checker_reads_its_own_environment(monkeypatch):
    monkeypatch.setenv("MINER_SIMPLICITY_Z_THRESHOLD", "3.5")
    monkeypatch.setenv("USER_SIMPLICITY_Z_THRESHOLD", "9")
    assert CheckerSettings(name="miner_simplicity").z_threshold == 3.5
    assert CheckerSettings(name="strong_collusion").z_threshold == 5.0


def test_overrides_beat_environment_which_beats_defaults(monkeypatch):
    monkeypatch.setenv("CONSTANT_REVENUE_ABS_EPS", "0.01")
    settings = checker_settings(
        "constant_revenue", {"abs_eps": 0.5, "bid_points": 7}, reps=None
    )
    assert settings.abs_eps == 0.01
    assert settings.bid_points == 7
    assert settings.reps == 1_000_000
    explicit = checker_settings("constant_revenue", {"abs_eps": 0.5}, abs_eps=0.2)
    assert explicit.abs_eps == 0.2


def test_checker_budgets_are_validated():
    with pytest.raises(ValidationError):
        CheckerSettings(name="user_simplicity", value_points=1)


def test_simulation_settings_from_environment(monkeypatch):
    monkeypatch.setenv("TFMLAB_JOBS", "4")
    monkeypatch.setenv("TFMLAB_BLOCK_SIZE", "128")
    settings = SimulationSettings()
    assert settings.jobs == 4
    assert settings.block_size == 128
    monkeypatch.setenv("TFMLAB_JOBS", "0")
    with pytest.raises(ValidationError):
        SimulationSettings()
