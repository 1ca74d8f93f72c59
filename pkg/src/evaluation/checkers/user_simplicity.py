"""Ex-post dominance of truthful bidding against sampled opponent bids."""

import numpy as np

from src.core.engine import draw_values, play_on_chain
from src.evaluation.checkers.base_checker import PropertyChecker, logger
from src.evaluation.checkers.scenario_setup import ScenarioSetup
from src.models.reports import PropertyVerdict, Witness
from src.settings import CheckerSettings
from src.settings.checkers import USER_SIMPLICITY_DEFAULTS


class UserSimplicityChecker(PropertyChecker):
    checker_name = "user_simplicity"
    defaults = USER_SIMPLICITY_DEFAULTS

    def check(
        self, setup: ScenarioSetup, settings: CheckerSettings
    ) -> PropertyVerdict:
        profile = setup.profile()
        if not profile.all_truthful:
            return self.trivial_violation(
                setup, settings, "users do not bid truthfully in the profile"
            )
        budget = {
            "opp_samples": settings.opp_samples,
            "value_points": settings.value_points,
            "bid_points": settings.bid_points,
        }
        if setup.n == 0:
            return self.verdict(setup, settings, None, budget, ["no users"])

        user = setup.config.cartel_user
        value_grid = setup.support_grid(settings.value_points)
        candidates = np.unique(
            np.concatenate([setup.support_grid(settings.bid_points), value_grid])
        )
        truthful = np.searchsorted(candidates, value_grid)
        opponents = draw_values(
            setup.distribution,
            setup.n,
            setup.seed,
            "user_simplicity",
            0,
            settings.opp_samples,
        )

        witness: Witness | None = None
        for row in opponents:
            allocation = np.empty(candidates.size)
            payment = np.empty(candidates.size)
            for position, bid in enumerate(candidates):
                play = play_on_chain(
                    setup.mechanism, profile, row, bid_overrides={user: [bid]}
                )
                allocation[position] = play.allocations[user]
                payment[position] = play.payments[user]

            # utilities[v, b] of a user with value v bidding candidate b
            utilities = np.outer(value_grid, allocation) - payment
            honest = utilities[np.arange(value_grid.size), truthful]
            best = utilities.argmax(axis=1)
            gains = utilities[np.arange(value_grid.size), best] - honest

            worst = int(np.argmax(gains))
            if witness is None or gains[worst] > witness.gain:
                witness = self._witness(
                    "bid_deviation",
                    f"value {value_grid[worst]:.4g} bids {candidates[best[worst]]:.4g}",
                    float(gains[worst]),
                    user,
                    row,
                    value=float(value_grid[worst]),
                    bid=float(candidates[best[worst]]),
                )
            loss = int(np.argmin(honest))
            if -honest[loss] > settings.abs_eps:
                witness = self._witness(
                    "individual_rationality",
                    f"truthful value {value_grid[loss]:.4g} has negative utility",
                    float(-honest[loss]),
                    user,
                    row,
                    value=float(value_grid[loss]),
                    bid=float(value_grid[loss]),
                )
                break
            if self.significant(settings, witness.gain, 0.0):
                logger.debug("Profitable bid deviation found", **witness.details)
                break

        return self.verdict(setup, settings, witness, budget)

    @staticmethod
    def _witness(
        family: str,
        description: str,
        gain: float,
        user: int,
        row: np.ndarray,
        **details,
    ) -> Witness:
        opponents = [float(v) for index, v in enumerate(row) if index != user]
        return Witness(
            description=f"{description} against opponent values {opponents}",
            gain=gain,
            family=family,
            details={"user": user, "opponent_values": opponents, **details},
        )
