from src.evaluation.checkers.base_checker import PropertyChecker
from src.evaluation.checkers.checker_factory import CHECKERS, CheckerFactory
from src.evaluation.checkers.constant_revenue import ConstantRevenueChecker
from src.evaluation.checkers.equilibria import compare_on_chain_equilibria
from src.evaluation.checkers.miner_simplicity import (
    MinerSimplicityChecker,
    miner_deviations,
)
from src.evaluation.checkers.off_chain_influence import OffChainInfluenceChecker
from src.evaluation.checkers.scenario_setup import ScenarioSetup
from src.evaluation.checkers.strong_collusion import StrongCollusionChecker
from src.evaluation.checkers.trustless_collusion import TrustlessCollusionChecker
from src.evaluation.checkers.user_simplicity import UserSimplicityChecker
from src.evaluation.checkers.weak_collusion import WeakCollusionChecker
from src.evaluation.checkers.witness_replay import replay_witness

__all__ = [
    "CHECKERS",
    "CheckerFactory",
    "ConstantRevenueChecker",
    "MinerSimplicityChecker",
    "OffChainInfluenceChecker",
    "PropertyChecker",
    "ScenarioSetup",
    "StrongCollusionChecker",
    "TrustlessCollusionChecker",
    "UserSimplicityChecker",
    "WeakCollusionChecker",
    "compare_on_chain_equilibria",
    "miner_deviations",
    "replay_witness",
]
