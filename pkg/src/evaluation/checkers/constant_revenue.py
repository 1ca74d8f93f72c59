"""Revenue that does not move with the number of users.

Compared both unconditionally and conditioned on the first user's value, the
latter on quantile midpoints of the prior.
"""

from itertools import combinations

import numpy as np

from src.core.engine import MINER_UTILITY, OnChainTask, mean_and_stderr
from src.evaluation.checkers.base_checker import PropertyChecker
from src.evaluation.checkers.scenario_setup import ScenarioSetup
from src.models.reports import PropertyVerdict, Witness
from src.settings import CheckerSettings
from src.settings.checkers import CONSTANT_REVENUE_DEFAULTS

LABEL = "constant_revenue"


class ConstantRevenueChecker(PropertyChecker):
    checker_name = "constant_revenue"
    defaults = CONSTANT_REVENUE_DEFAULTS

    def check(
        self, setup: ScenarioSetup, settings: CheckerSettings
    ) -> PropertyVerdict:
        counts = sorted(set(setup.config.n_range))
        conditioning = setup.quantile_grid(settings.conditioning_points)
        revenues: dict[tuple[int, float | None], tuple[float, float]] = {}
        for n in counts:
            task = OnChainTask(setup.mechanism, setup.profile(n))
            revenues[n, None] = mean_and_stderr(
                setup.simulate(task, LABEL, settings.reps)[:, MINER_UTILITY]
            )
            if n == 0:
                continue
            for value in map(float, conditioning):
                revenues[n, value] = mean_and_stderr(
                    setup.simulate(task, LABEL, settings.reps, fixed=(0, value))[
                        :, MINER_UTILITY
                    ]
                )

        witness: Witness | None = None
        for condition in [None, *map(float, conditioning)]:
            present = [n for n in counts if (n, condition) in revenues]
            for low, high in combinations(present, 2):
                (low_mean, low_se), (high_mean, high_se) = (
                    revenues[low, condition],
                    revenues[high, condition],
                )
                gap = abs(high_mean - low_mean)
                gap_se = float(np.hypot(low_se, high_se))
                if self.stronger(settings, gap, gap_se, witness):
                    given = "" if condition is None else f" given v0={condition:.4g}"
                    witness = Witness(
                        description=(
                            f"revenue {low_mean:.5g} at n={low} vs "
                            f"{high_mean:.5g} at n={high}{given}"
                        ),
                        gain=gap,
                        std_err=gap_se,
                        family="unconditional" if condition is None else "conditional",
                        details={"n": [low, high], "condition": condition},
                    )

        return self.verdict(
            setup,
            settings,
            witness,
            {
                "reps": settings.reps,
                "n_range": counts,
                "conditioning_points": settings.conditioning_points,
            },
        )
