from dataclasses import dataclass, field

import numpy as np

from src.core.agents import (
    MinerStrategy,
    OnChainProfile,
    StrategyContext,
    StrategyFactory,
    UserStrategy,
)
from src.core.distributions import ValueDistribution
from src.core.engine import ReplicationTask, simulate
from src.core.mechanisms import BlockBuildingProcess, MechanismFactory
from src.models.scenario import ScenarioConfig, StrategiesConfig, StrategySpec
from src.settings import CheckerSettings, checker_settings


@dataclass(frozen=True)
class ScenarioSetup:
    """A validated scenario with its mechanism resolved against the prior."""

    config: ScenarioConfig
    mechanism: BlockBuildingProcess
    jobs: int | None = None
    _profiles: dict = field(default_factory=dict, compare=False, repr=False)

    @classmethod
    def from_config(cls, config: ScenarioConfig, jobs: int | None = None):
        mechanism = MechanismFactory.create(config.mechanism, config.distribution)
        return cls(config=config, mechanism=mechanism, jobs=jobs)

    @property
    def distribution(self) -> ValueDistribution:
        return self.config.distribution

    @property
    def n(self) -> int:
        return self.config.n

    @property
    def seed(self) -> int:
        return self.config.seed

    @property
    def strategies(self) -> StrategiesConfig:
        return self.config.strategies

    def context(self, n: int | None = None) -> StrategyContext:
        return StrategyContext(
            n=self.n if n is None else n,
            distribution=self.distribution,
            mechanism=self.mechanism.config,
        )

    def profile(
        self, n: int | None = None, strategies: StrategiesConfig | None = None
    ) -> OnChainProfile:
        """Profile for ``n`` users, built once per (n, strategies)."""
        n = self.n if n is None else n
        strategies = strategies or self.strategies
        key = (n, strategies.model_dump_json())
        if key not in self._profiles:
            self._profiles[key] = StrategyFactory.create_profile(
                strategies, self.context(n)
            )
        return self._profiles[key]

    def miner(self, spec: StrategySpec) -> MinerStrategy:
        return StrategyFactory.create_miner(spec, self.context())

    def user(self, spec: StrategySpec) -> UserStrategy:
        return StrategyFactory.create_user(spec, self.context())

    def checker_settings(
        self, name: str, defaults: dict | None = None
    ) -> CheckerSettings:
        """Checker budget: scenario values, then environment, then ``defaults``."""
        return checker_settings(
            name,
            defaults,
            reps=self.config.reps,
            **self.config.thresholds.model_dump(),
            **self.config.grids.model_dump(),
        )

    def support_grid(self, points: int) -> np.ndarray:
        d = self.distribution
        return np.linspace(d.lo, d.hi_effective, points)

    def quantile_grid(self, points: int) -> np.ndarray:
        """Quantile midpoints; averaging over them approximates an expectation."""
        probabilities = (np.arange(points) + 0.5) / points
        return np.asarray(self.distribution.quantile(probabilities), dtype=float)

    def simulate(
        self,
        task: ReplicationTask,
        label: str,
        reps: int,
        fixed: tuple[int, float] | None = None,
        seed: int | None = None,
    ) -> np.ndarray:
        return simulate(
            task,
            self.distribution,
            reps,
            self.seed if seed is None else seed,
            label,
            fixed=fixed,
            jobs=self.jobs,
        )
