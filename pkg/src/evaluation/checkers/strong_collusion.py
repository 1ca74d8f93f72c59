"""Can the miner and one user raise their joint utility by coordinating on-chain?

For a fixed cartel bid and miner strategy the joint utility is affine in the
cartel user's value, so every (bid, miner) pair is simulated once and scored
against the whole value grid. The best pair is then confirmed on a fresh
substream at full budget.
"""

import numpy as np

from src.core.distributions import inverse_virtual
from src.core.engine import MetricLayout, OnChainTask, paired_gain
from src.core.exceptions import OutOfRangeError
from src.evaluation.checkers.base_checker import PropertyChecker, logger
from src.evaluation.checkers.cartel import CartelPlay, joint_samples
from src.evaluation.checkers.scenario_setup import ScenarioSetup
from src.models.reports import PropertyVerdict, Witness
from src.models.scenario import StrategySpec
from src.settings import CheckerSettings

LABEL = "strong_collusion"
CONFIRM_LABEL = "strong_collusion_confirm"
PILOT_FRACTION = 8


def cartel_miners(
    setup: ScenarioSetup, settings: CheckerSettings
) -> list[StrategySpec]:
    """The profile miner first, then the legal reserve and plaintext deviations."""
    miners: list[StrategySpec] = []
    if setup.mechanism.config.takes_advice:
        reserves = np.unique(
            np.concatenate([[0.0], setup.support_grid(settings.reserve_points)])
        )
        miners += [
            StrategySpec(name="compliant", params={"advice": float(reserve)})
            for reserve in reserves
        ]
        miners += [
            StrategySpec(name="reserve_at_max_bid"),
            StrategySpec(
                name="p2pa_revenue_reserve", params={"k": setup.mechanism.config.k}
            ),
        ]
    crypto_model = setup.mechanism.crypto_model
    legal = [spec for spec in miners if setup.miner(spec).legal_under(crypto_model)]
    return [setup.strategies.miner, *legal]


def shill_bids(setup: ScenarioSetup, values: np.ndarray) -> list[float]:
    """Bids at phi^-1(v), the price that extracts the cartel's virtual surplus."""
    bids = []
    for value in values:
        try:
            bids.append(inverse_virtual(setup.distribution, float(value)))
        except OutOfRangeError:
            continue
    return bids


class StrongCollusionChecker(PropertyChecker):
    checker_name = "strong_collusion"

    def check(
        self, setup: ScenarioSetup, settings: CheckerSettings
    ) -> PropertyVerdict:
        pilot_reps = max(settings.reps // PILOT_FRACTION, 1)
        budget = {
            "reps": settings.reps,
            "pilot_reps": pilot_reps,
            "value_points": settings.value_points,
            "bid_points": settings.bid_points,
            "reserve_points": settings.reserve_points,
        }
        if setup.n == 0:
            return self.verdict(setup, settings, None, budget, ["no users"])

        user = setup.config.cartel_user
        profile = setup.profile()
        layout = MetricLayout(setup.n)
        values = setup.support_grid(settings.value_points)
        baseline_bids = [tuple(profile.users[user].bids(float(v))) for v in values]
        single_bids = np.unique(
            np.concatenate(
                [setup.support_grid(settings.bid_points), shill_bids(setup, values)]
            )
        )
        candidate_bids = list(
            dict.fromkeys([(float(b),) for b in single_bids] + baseline_bids)
        )
        miners = cartel_miners(setup, settings)

        def play(bids: tuple[float, ...], spec: StrategySpec, reps: int, label: str):
            task = OnChainTask(
                setup.mechanism,
                profile,
                bid_overrides={user: list(bids)},
                miner=setup.miner(spec),
            )
            return setup.simulate(task, label, reps)

        pilot: dict[tuple[tuple[float, ...], int], CartelPlay] = {}
        for miner_index, spec in enumerate(miners):
            for bids in candidate_bids:
                samples = play(bids, spec, pilot_reps, LABEL)
                pilot[bids, miner_index] = CartelPlay.of(samples, layout, user)
        logger.debug(
            "Strong collusion pilot done",
            candidates=len(pilot),
            pilot_reps=pilot_reps,
        )

        best: tuple[float, int, tuple[float, ...], int] | None = None
        for value_index, value in enumerate(values):
            baseline = pilot[baseline_bids[value_index], 0].joint(value)
            for (bids, miner_index), outcome in pilot.items():
                gain = outcome.joint(value) - baseline
                if best is None or gain > best[0]:
                    best = (gain, value_index, bids, miner_index)

        _, value_index, bids, miner_index = best
        value = float(values[value_index])
        deviation = joint_samples(
            play(bids, miners[miner_index], settings.reps, CONFIRM_LABEL),
            layout,
            user,
            value,
        )
        baseline = joint_samples(
            play(baseline_bids[value_index], miners[0], settings.reps, CONFIRM_LABEL),
            layout,
            user,
            value,
        )
        gain, std_err = paired_gain(baseline, deviation)
        miner = miners[miner_index]
        witness = Witness(
            description=(
                f"user {user} with value {value:.4g} bids {list(bids)} "
                f"while the miner plays {miner.model_dump(exclude_defaults=True)}"
            ),
            gain=gain,
            std_err=std_err,
            family="joint_deviation",
            details={
                "user": user,
                "value": value,
                "bids": list(bids),
                "miner": miner.model_dump(),
            },
        )
        return self.verdict(setup, settings, witness, budget)
