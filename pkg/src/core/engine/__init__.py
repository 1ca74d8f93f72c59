from src.core.engine.attacks import (
    OffChainEntryFee,
    OffChainPostedPrice,
    OffChainSecondPrice,
    ShillRebate,
    SteerToThreshold,
    TabulatedShill,
    known_off_chain_attacks,
    optimal_entry_fee,
)
from src.core.engine.off_chain import (
    Message,
    OffChainMechanism,
    Resolution,
    TrivialOffChain,
    play_off_chain,
)
from src.core.engine.on_chain import Play, play_on_chain
from src.core.engine.simulation import (
    BURNED,
    MINER_UTILITY,
    PENALTIES,
    USER_PAYMENTS,
    VIRTUAL_WELFARE,
    MetricLayout,
    OffChainTask,
    OnChainTask,
    ReplicationTask,
    estimate,
    mean_and_stderr,
    paired_gain,
    simulate,
)
from src.core.engine.streams import block_layout, draw_values, substream

__all__ = [
    "BURNED",
    "MINER_UTILITY",
    "PENALTIES",
    "USER_PAYMENTS",
    "VIRTUAL_WELFARE",
    "Message",
    "MetricLayout",
    "OffChainEntryFee",
    "OffChainMechanism",
    "OffChainPostedPrice",
    "OffChainSecondPrice",
    "OffChainTask",
    "OnChainTask",
    "Play",
    "ReplicationTask",
    "Resolution",
    "ShillRebate",
    "SteerToThreshold",
    "TabulatedShill",
    "TrivialOffChain",
    "block_layout",
    "draw_values",
    "estimate",
    "known_off_chain_attacks",
    "mean_and_stderr",
    "optimal_entry_fee",
    "paired_gain",
    "play_off_chain",
    "play_on_chain",
    "simulate",
    "substream",
]
