from src.evaluation.checkers.base_checker import PropertyChecker
from src.evaluation.checkers.cartel import evaluate_contract, weak_collusion_contracts
from src.evaluation.checkers.scenario_setup import ScenarioSetup
from src.models.reports import PropertyVerdict, Witness
from src.settings import CheckerSettings

LABEL = "weak_collusion"
PILOT_FRACTION = 8


class WeakCollusionChecker(PropertyChecker):
    """A contract with one user that both parties prefer, ex ante.

    The other users ignore the contract and play the on-chain profile.
    """

    checker_name = "weak_collusion"

    def check(
        self, setup: ScenarioSetup, settings: CheckerSettings
    ) -> PropertyVerdict:
        budget = {"reps": settings.reps, "value_points": settings.value_points}
        if setup.n == 0:
            return self.verdict(setup, settings, None, budget, ["no users"])

        user = setup.config.cartel_user
        profile = setup.profile()
        grid = setup.quantile_grid(settings.value_points)
        contracts = weak_collusion_contracts(
            setup,
            profile,
            user,
            grid,
            max(settings.reps // PILOT_FRACTION, 1),
        )

        witness: Witness | None = None
        for contract in contracts:
            gains = evaluate_contract(
                setup,
                contract,
                profile,
                user,
                reports=grid,
                values=grid,
                respond=False,
                reps=settings.reps,
                label=LABEL,
            )
            user_gain, user_se = gains.ex_ante_user
            miner_gain, miner_se = gains.ex_ante_miner
            # the weaker side decides whether the contract is mutually profitable
            margins = (
                (user_gain - self.threshold(settings, user_se), user_gain, user_se),
                (miner_gain - self.threshold(settings, miner_se), miner_gain, miner_se),
            )
            _, gain, std_err = min(margins)
            if self.stronger(settings, gain, std_err, witness):
                witness = Witness(
                    description=(
                        f"contract {contract.describe()}: user gains "
                        f"{user_gain:.4g}, miner gains {miner_gain:.4g}"
                    ),
                    gain=gain,
                    std_err=std_err,
                    family="contract",
                    details={
                        "contract": contract.describe(),
                        "user": user,
                        "user_gain": user_gain,
                        "miner_gain": miner_gain,
                        "reports": gains.choices,
                    },
                )
        budget["contracts"] = [contract.name for contract in contracts]
        return self.verdict(setup, settings, witness, budget)
