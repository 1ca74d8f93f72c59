from src.evaluation.checkers.base_checker import PropertyChecker
from src.evaluation.checkers.constant_revenue import ConstantRevenueChecker
from src.evaluation.checkers.miner_simplicity import MinerSimplicityChecker
from src.evaluation.checkers.off_chain_influence import OffChainInfluenceChecker
from src.evaluation.checkers.strong_collusion import StrongCollusionChecker
from src.evaluation.checkers.trustless_collusion import TrustlessCollusionChecker
from src.evaluation.checkers.user_simplicity import UserSimplicityChecker
from src.evaluation.checkers.weak_collusion import WeakCollusionChecker
from src.settings import CheckerSettings

CHECKERS: dict[str, type[PropertyChecker]] = {
    checker.checker_name: checker
    for checker in (
        UserSimplicityChecker,
        MinerSimplicityChecker,
        OffChainInfluenceChecker,
        StrongCollusionChecker,
        WeakCollusionChecker,
        TrustlessCollusionChecker,
        ConstantRevenueChecker,
    )
}


class CheckerFactory:
    @classmethod
    def create(
        cls, name: str, settings: CheckerSettings | None = None
    ) -> PropertyChecker:
        if name not in CHECKERS:
            raise ValueError(f"Unknown checker: {name}; known: {sorted(CHECKERS)}")
        return CHECKERS[name](settings)

    @classmethod
    def vocabulary(cls) -> tuple[str, ...]:
        return tuple(CHECKERS)
