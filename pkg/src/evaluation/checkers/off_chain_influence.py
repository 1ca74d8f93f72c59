import numpy as np

from src.core.engine import (
    MINER_UTILITY,
    OffChainTask,
    OnChainTask,
    known_off_chain_attacks,
    mean_and_stderr,
    paired_gain,
)
from src.core.interim import optimal_revenue_benchmark
from src.evaluation.checkers.base_checker import PropertyChecker
from src.evaluation.checkers.scenario_setup import ScenarioSetup
from src.models.reports import PropertyVerdict, Witness
from src.settings import CheckerSettings, simulation_settings
from src.settings.checkers import OFF_CHAIN_INFLUENCE_DEFAULTS

LABEL = "off_chain_influence"
BENCHMARK_REPS_FACTOR = 10


class OffChainInfluenceChecker(PropertyChecker):
    """Revenue must reach the on-chain benchmark and resist the known attacks.

    A mechanism whose miner already earns the most any block-routed mechanism
    can earn leaves nothing for an off-chain mechanism to add.
    """

    checker_name = "off_chain_influence"
    defaults = OFF_CHAIN_INFLUENCE_DEFAULTS

    def check(
        self, setup: ScenarioSetup, settings: CheckerSettings
    ) -> PropertyVerdict:
        config = setup.mechanism.config
        profile = setup.profile()
        revenue = setup.simulate(
            OnChainTask(setup.mechanism, profile), LABEL, settings.reps
        )[:, MINER_UTILITY]
        mean, std_err = mean_and_stderr(revenue)
        benchmark = optimal_revenue_benchmark(
            setup.distribution,
            setup.n,
            config.capacity,
            config.burn_per_inclusion,
            reps=min(
                simulation_settings.benchmark_reps,
                BENCHMARK_REPS_FACTOR * settings.reps,
            ),
            seed=setup.seed,
        )
        witness = Witness(
            description=(
                f"revenue {mean:.5g} is below the on-chain benchmark "
                f"{benchmark.value:.5g}"
            ),
            gain=benchmark.value - mean,
            std_err=float(np.hypot(std_err, benchmark.std_err)),
            family="benchmark_gap",
            details={
                "revenue": mean,
                "benchmark": benchmark.value,
                "quadrature": benchmark.quadrature,
            },
        )

        attacks = known_off_chain_attacks(setup.mechanism, setup.distribution, setup.n)
        for attack in attacks:
            attacked = setup.simulate(
                OffChainTask(setup.mechanism, attack, profile), LABEL, settings.reps
            )[:, MINER_UTILITY]
            gain, gain_se = paired_gain(revenue, attacked)
            if self.stronger(settings, gain, gain_se, witness):
                witness = Witness(
                    description=f"off-chain attack {attack.describe()}",
                    gain=gain,
                    std_err=gain_se,
                    family="known_attack",
                    details={"attack": attack.describe()},
                )

        return self.verdict(
            setup,
            settings,
            witness,
            {
                "reps": settings.reps,
                "benchmark_reps": benchmark.replications,
                "attacks": [attack.name for attack in attacks],
            },
            notes=["attacks are scored under their documented user responses"],
        )
