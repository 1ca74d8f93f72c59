from src.core.mechanisms.block_building import (
    bomb,
    dra,
    eip1559,
    k_plus_one_price,
    posted_price,
    sr2pa,
    winner_pays_bid,
)
from src.core.mechanisms.mechanism_factory import (
    BlockBuildingProcess,
    MechanismFactory,
)

__all__ = [
    "BlockBuildingProcess",
    "MechanismFactory",
    "bomb",
    "dra",
    "eip1559",
    "k_plus_one_price",
    "posted_price",
    "sr2pa",
    "winner_pays_bid",
]
