from src.core.engine import MINER_UTILITY, MetricLayout, OnChainTask, paired_gain
from src.evaluation.checkers.cartel import joint_samples
from src.evaluation.checkers.scenario_setup import ScenarioSetup
from src.models.reports import PropertyVerdict
from src.models.scenario import StrategySpec

LABEL = "replay"
REPLAYABLE = ("miner_simplicity", "strong_collusion")


def replay_witness(
    setup: ScenarioSetup, verdict: PropertyVerdict, reps_factor: int = 4
) -> tuple[float, float]:
    """Re-run a witness standalone on a fresh seed; returns (gain, std_err).

    Raises:
        ValueError: the verdict carries no replayable deviation.
    """
    witness = verdict.witness
    if verdict.property_name not in REPLAYABLE or witness is None:
        raise ValueError(f"{verdict.property_name} witnesses cannot be replayed")
    details = witness.details
    if "miner" not in details:
        raise ValueError(f"witness '{witness.description}' has no replay details")

    reps = reps_factor * verdict.search_budget.get("reps", setup.config.reps)
    seed = verdict.seed + 1
    profile = setup.profile()
    miner = setup.miner(StrategySpec.model_validate(details["miner"]))

    if verdict.property_name == "miner_simplicity":
        baseline = OnChainTask(setup.mechanism, profile)
        deviation = OnChainTask(setup.mechanism, profile, miner=miner)
        return paired_gain(
            setup.simulate(baseline, LABEL, reps, seed=seed)[:, MINER_UTILITY],
            setup.simulate(deviation, LABEL, reps, seed=seed)[:, MINER_UTILITY],
        )

    user, value = details["user"], details["value"]
    layout = MetricLayout(setup.n)
    baseline = OnChainTask(
        setup.mechanism, profile, bid_overrides={user: profile.users[user].bids(value)}
    )
    deviation = OnChainTask(
        setup.mechanism, profile, bid_overrides={user: details["bids"]}, miner=miner
    )
    return paired_gain(
        joint_samples(
            setup.simulate(baseline, LABEL, reps, seed=seed), layout, user, value
        ),
        joint_samples(
            setup.simulate(deviation, LABEL, reps, seed=seed), layout, user, value
        ),
    )
