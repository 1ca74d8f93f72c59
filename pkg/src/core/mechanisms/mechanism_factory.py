from collections.abc import Sequence

from src.core.distributions import ValueDistribution, monopoly_reserve_or_fallback
from src.core.mechanisms import block_building
from src.models.auction import Bid, DraBid, Outcome
from src.models.mechanism import MechanismConfig

MECHANISM_PARAMETERS: dict[str, tuple[str, ...]] = {
    "eip1559": ("price",),
    "c_k1_pa": ("k", "burn", "advice: reserve"),
    "p_k1_pa": ("k", "burn", "advice: reserve"),
    "wpb": ("k", "crypto_model", "advice: reserve"),
    "posted_plain": ("advice: price",),
    "posted_crypto": ("advice: price",),
    "bomb": ("reserve",),
    "sr2pa": ("advice: reserve",),
    "dra": ("reserve", "p_conceal"),
}


class BlockBuildingProcess:
    """A configured mechanism; ``build`` is pure and safe to share."""

    def __init__(self, config: MechanismConfig):
        if isinstance(config.reserve, str):
            raise ValueError(
                "Mechanism reserve must be resolved before building, "
                "use MechanismFactory.create with a distribution"
            )
        self._config = config

    @property
    def config(self) -> MechanismConfig:
        return self._config

    @property
    def kind(self) -> str:
        return self._config.kind

    @property
    def crypto_model(self) -> str:
        return self._config.crypto_model

    @property
    def is_deferred(self) -> bool:
        return self._config.kind == "dra"

    def build(self, advice: float | None, bids: Sequence[Bid]) -> Outcome:
        config = self._config
        reserve = 0.0 if advice is None else advice

        match config.kind:
            case "eip1559":
                return block_building.eip1559(config.price, bids)
            case "c_k1_pa" | "p_k1_pa":
                return block_building.k_plus_one_price(
                    config.k, reserve, bids, burn=config.burn
                )
            case "wpb":
                return block_building.winner_pays_bid(config.k, reserve, bids)
            case "posted_plain" | "posted_crypto":
                return block_building.posted_price(reserve, bids)
            case "bomb":
                return block_building.bomb(config.reserve, bids)
            case "sr2pa":
                return block_building.sr2pa(reserve, bids)
            case "dra":
                return block_building.dra(
                    config.reserve,
                    config.p_conceal,
                    [DraBid(bid=bid) for bid in bids],
                )
        raise ValueError(f"Unknown mechanism kind: {config.kind}")

    def build_deferred(self, dra_bids: Sequence[DraBid]) -> Outcome:
        if not self.is_deferred:
            raise ValueError(f"{self.kind} has no decryption phase")
        return block_building.dra(
            self._config.reserve, self._config.p_conceal, dra_bids
        )

    def __repr__(self) -> str:
        return f"BlockBuildingProcess({self._config.model_dump(exclude_none=True)})"


class MechanismFactory:
    @classmethod
    def create(
        cls, config: MechanismConfig, distribution: ValueDistribution | None = None
    ) -> BlockBuildingProcess:
        if config.reserve == "monopoly":
            if distribution is None:
                raise ValueError(
                    f"{config.kind}: reserve='monopoly' needs a value distribution"
                )
            config = config.model_copy(
                update={"reserve": monopoly_reserve_or_fallback(distribution)}
            )
        return BlockBuildingProcess(config)

    @classmethod
    def vocabulary(cls) -> dict[str, tuple[str, ...]]:
        return dict(MECHANISM_PARAMETERS)
