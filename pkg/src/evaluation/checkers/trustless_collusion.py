from src.core.engine import OffChainMechanism, known_off_chain_attacks
from src.evaluation.checkers.base_checker import PropertyChecker
from src.evaluation.checkers.cartel import (
    evaluate_contract,
    grid_best_response,
    weak_collusion_contracts,
)
from src.evaluation.checkers.off_chain_influence import OffChainInfluenceChecker
from src.evaluation.checkers.scenario_setup import ScenarioSetup
from src.models.reports import PropertyVerdict, Witness
from src.settings import CheckerSettings

LABEL = "trustless_collusion"
RESPONSE_LABEL = "trustless_response"
PILOT_FRACTION = 8


class TrustlessCollusionChecker(PropertyChecker):
    """An off-chain mechanism the miner profits from and some user opts into.

    Mechanisms that pass the off-chain influence check are immune. Otherwise
    the known attacks and the weak-collusion contracts are scored with the
    users outside the cartel playing a grid best response over ``bid_points``
    reports (or abstaining), and the cartel user best-responding at each grid
    value. Every contract's outcome is listed in the search budget.
    """

    checker_name = "trustless_collusion"

    def check(
        self, setup: ScenarioSetup, settings: CheckerSettings
    ) -> PropertyVerdict:
        budget = {
            "reps": settings.reps,
            "value_points": settings.value_points,
            "bid_points": settings.bid_points,
        }
        influence = OffChainInfluenceChecker()(setup)
        if influence.passed:
            return self.verdict(
                setup,
                settings,
                None,
                budget,
                ["off-chain influence proof: no off-chain mechanism adds revenue"],
            )
        if setup.n == 0:
            return self.verdict(setup, settings, None, budget, ["no users"])

        user = setup.config.cartel_user
        profile = setup.profile()
        grid = setup.quantile_grid(settings.value_points)
        pilot_reps = max(settings.reps // PILOT_FRACTION, 1)
        contracts: list[OffChainMechanism] = [
            *known_off_chain_attacks(setup.mechanism, setup.distribution, setup.n),
            *weak_collusion_contracts(setup, profile, user, grid, pilot_reps),
        ]
        # users are symmetric, so one outsider's responses serve them all
        outsider = (user + 1) % setup.n

        witness: Witness | None = None
        outcomes = []
        for contract in contracts:
            played = contract
            if setup.n > 1:
                played = grid_best_response(
                    setup,
                    contract,
                    profile,
                    outsider,
                    reports=setup.support_grid(settings.bid_points),
                    values=grid,
                    reps=pilot_reps,
                    label=RESPONSE_LABEL,
                )
            gains = evaluate_contract(
                setup,
                played,
                profile,
                user,
                reports=grid,
                values=grid,
                respond=True,
                reps=settings.reps,
                label=LABEL,
            )
            miner_gain, miner_se = gains.ex_ante_miner
            margins = gains.user_gain - [
                self.threshold(settings, se) for se in gains.user_se
            ]
            best = int(margins.argmax())
            user_gain = float(gains.user_gain[best])
            user_se = float(gains.user_se[best])
            # the weaker side decides whether the contract gets signed
            _, gain, std_err = min(
                (miner_gain - self.threshold(settings, miner_se), miner_gain, miner_se),
                (float(margins[best]), user_gain, user_se),
            )
            violated = self.significant(settings, gain, std_err)
            outcomes.append(
                {
                    "contract": contract.name,
                    "gain": gain,
                    "se": std_err,
                    "verdict": "VIOLATION" if violated else "NO_VIOLATION_FOUND",
                }
            )
            if self.stronger(settings, gain, std_err, witness):
                witness = Witness(
                    description=(
                        f"contract {contract.describe()}: miner gains "
                        f"{miner_gain:.4g}, user with value "
                        f"{gains.values[best]:.4g} gains {user_gain:.4g}"
                    ),
                    gain=gain,
                    std_err=std_err,
                    family="trustless_contract",
                    details={
                        "contract": contract.describe(),
                        "user": user,
                        "value": float(gains.values[best]),
                        "report": gains.choices[best],
                        "miner_gain": miner_gain,
                        "user_gain": user_gain,
                        "responses": list(getattr(played, "responses", [])),
                    },
                )
        budget["contracts"] = outcomes
        return self.verdict(setup, settings, witness, budget)
