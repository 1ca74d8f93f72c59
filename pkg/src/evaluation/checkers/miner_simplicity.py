"""Does any legal miner deviation beat following the rules against the profile?"""

from src.core.engine import MINER_UTILITY, OnChainTask, paired_gain
from src.evaluation.checkers.base_checker import PropertyChecker, logger
from src.evaluation.checkers.scenario_setup import ScenarioSetup
from src.models.reports import PropertyVerdict, Witness
from src.models.scenario import StrategySpec
from src.settings import CheckerSettings

LABEL = "miner_simplicity"


def _composite(*parts: StrategySpec) -> StrategySpec:
    return StrategySpec(name="composite", parts=list(parts))


def miner_deviations(
    setup: ScenarioSetup, settings: CheckerSettings
) -> list[tuple[str, StrategySpec]]:
    """Candidate deviations as (family, strategy spec), in evaluation order."""
    base = setup.strategies.miner
    mechanism = setup.mechanism.config
    deviations: list[tuple[str, StrategySpec]] = []

    if mechanism.takes_advice:
        for reserve in setup.support_grid(settings.reserve_points):
            spec = StrategySpec(name="compliant", params={"advice": float(reserve)})
            deviations.append(("reserve", spec))
    for count in range(1, min(settings.max_censored, setup.n) + 1):
        censor = StrategySpec(name="censor_lowest_ids", params={"count": count})
        deviations.append(("censor", _composite(base, censor)))
    for count in range(1, settings.max_fabricated + 1):
        for amount in setup.support_grid(settings.fabrication_points):
            fabricate = StrategySpec(
                name="fabricate", params={"amounts": [float(amount)] * count}
            )
            deviations.append(("fabricate", _composite(base, fabricate)))
    if mechanism.takes_advice:
        deviations.append(("plaintext", StrategySpec(name="reserve_at_max_bid")))
        deviations.append(
            (
                "plaintext",
                StrategySpec(name="p2pa_revenue_reserve", params={"k": mechanism.k}),
            )
        )
    if setup.mechanism.is_deferred:
        deviations.append(
            (
                "selective_reveal",
                StrategySpec(
                    name="dra_selective_reveal",
                    params={"points": settings.reveal_grid_points},
                ),
            )
        )
    return deviations


class MinerSimplicityChecker(PropertyChecker):
    checker_name = "miner_simplicity"

    def check(
        self, setup: ScenarioSetup, settings: CheckerSettings
    ) -> PropertyVerdict:
        profile = setup.profile()
        if not profile.miner.is_compliant:
            return self.trivial_violation(
                setup, settings, f"profile miner plays {profile.miner.name}"
            )
        crypto_model = setup.mechanism.crypto_model
        baseline = setup.simulate(
            OnChainTask(setup.mechanism, profile), LABEL, settings.reps
        )[:, MINER_UTILITY]

        witness: Witness | None = None
        evaluated = skipped = 0
        for family, spec in miner_deviations(setup, settings):
            miner = setup.miner(spec)
            if not miner.legal_under(crypto_model):
                logger.debug(
                    "Skipping illegal deviation",
                    family=family,
                    strategy=spec.name,
                    crypto_model=crypto_model,
                )
                skipped += 1
                continue
            samples = setup.simulate(
                OnChainTask(setup.mechanism, profile, miner=miner), LABEL, settings.reps
            )[:, MINER_UTILITY]
            gain, std_err = paired_gain(baseline, samples)
            evaluated += 1
            if self.stronger(settings, gain, std_err, witness):
                witness = Witness(
                    description=f"{family}: {spec.model_dump(exclude_defaults=True)}",
                    gain=gain,
                    std_err=std_err,
                    family=family,
                    details={"miner": spec.model_dump()},
                )

        return self.verdict(
            setup,
            settings,
            witness,
            {
                "reps": settings.reps,
                "deviations": evaluated,
                "illegal_skipped": skipped,
                "reserve_points": settings.reserve_points,
                "fabrication_points": settings.fabrication_points,
                "max_fabricated": settings.max_fabricated,
                "max_censored": settings.max_censored,
            },
        )
