import pytest

from src.core.agents import StrategyContext, StrategyFactory
from src.core.distributions import ValueDistribution
from src.core.mechanisms import MechanismFactory
from src.evaluation.checkers import ScenarioSetup
from src.models.mechanism import MechanismConfig
from src.models.scenario import ScenarioConfig, StrategiesConfig


@pytest.fixture
def uniform() -> ValueDistribution:
    return ValueDistribution(kind="uniform", params={"lo": 0.0, "hi": 1.0})


@pytest.fixture
def make_mechanism(uniform):
    def make(**fields):
        return MechanismFactory.create(MechanismConfig(**fields), uniform)

    return make


@pytest.fixture
def make_profile(uniform):
    """Profile for ``n`` users from a strategies mapping."""

    def make(mechanism, n: int, strategies: dict | None = None):
        context = StrategyContext(
            n=n, distribution=uniform, mechanism=mechanism.config
        )
        return StrategyFactory.create_profile(
            StrategiesConfig.model_validate(strategies or {}), context
        )

    return make


@pytest.fixture
def make_setup():
    """Scenario setup on U[0, 1] with budgets small enough for unit tests."""

    def make(mechanism: dict, **fields) -> ScenarioSetup:
        data = {
            "name": fields.pop("name", "test"),
            "mechanism": mechanism,
            "distribution": {"kind": "uniform", "params": {"lo": 0.0, "hi": 1.0}},
            "seed": 7,
            "reps": 8000,
            "grids": {
                "value_points": 6,
                "bid_points": 21,
                "reserve_points": 6,
                "fabrication_points": 3,
                "max_fabricated": 1,
                "max_censored": 1,
                "opp_samples": 20,
                "reveal_grid_points": 11,
                "conditioning_points": 2,
            },
            **fields,
        }
        return ScenarioSetup.from_config(ScenarioConfig.model_validate(data))

    return make
