from src.core.agents.equilibria import equilibrium_profiles
from src.core.agents.miner_strategies import (
    LEGAL_TAGS,
    CensorIds,
    CensorLowestIds,
    Compliant,
    Composite,
    DraSelectiveReveal,
    EntryFeeCensor,
    Fabricate,
    MinerStrategy,
    P2paRevenueReserve,
    ReserveAtMaxBid,
    dra_reveal,
    miner_act,
)
from src.core.agents.profile import OnChainProfile
from src.core.agents.shading import (
    ShadingTable,
    shade_winner_pays_bid,
    shading_best_response_gap,
)
from src.core.agents.strategy_factory import (
    StrategyContext,
    StrategyFactory,
    reveal_grid,
)
from src.core.agents.user_strategies import (
    Custom,
    DraTruthfulReveal,
    Fixed,
    ShadeWinnerPaysBid,
    Threshold,
    Truthful,
    UserStrategy,
    user_bid,
)

__all__ = [
    "LEGAL_TAGS",
    "CensorIds",
    "CensorLowestIds",
    "Compliant",
    "Composite",
    "Custom",
    "DraSelectiveReveal",
    "DraTruthfulReveal",
    "EntryFeeCensor",
    "Fabricate",
    "Fixed",
    "MinerStrategy",
    "OnChainProfile",
    "P2paRevenueReserve",
    "ReserveAtMaxBid",
    "ShadeWinnerPaysBid",
    "ShadingTable",
    "StrategyContext",
    "StrategyFactory",
    "Threshold",
    "Truthful",
    "UserStrategy",
    "dra_reveal",
    "equilibrium_profiles",
    "miner_act",
    "reveal_grid",
    "shade_winner_pays_bid",
    "shading_best_response_gap",
    "user_bid",
]
