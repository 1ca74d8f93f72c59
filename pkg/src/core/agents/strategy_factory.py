import importlib
from dataclasses import dataclass

import numpy as np

from src.core.agents.miner_strategies import (
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
)
from src.core.agents.profile import OnChainProfile
from src.core.agents.shading import ShadingTable
from src.core.agents.user_strategies import (
    Custom,
    DraTruthfulReveal,
    Fixed,
    ShadeWinnerPaysBid,
    Threshold,
    Truthful,
    UserStrategy,
)
from src.core.distributions import (
    ValueDistribution,
    inverse_virtual,
    monopoly_reserve_or_fallback,
)
from src.models.mechanism import MechanismConfig
from src.models.scenario import StrategiesConfig, StrategySpec

STRATEGY_PARAMETERS: dict[str, dict[str, tuple[str, ...]]] = {
    "user": {
        "truthful": (),
        "shade_wpb": ("reserve", "below_reserve: bid_value|bid_zero", "k"),
        "threshold": ("reserve",),
        "fixed": ("amount",),
        "dra_truthful_reveal": (),
        "custom": ("function: module:attr", "reveal"),
    },
    "miner": {
        "compliant": ("advice: number|monopoly|optimal|null",),
        "censor": ("ids",),
        "censor_lowest_ids": ("count",),
        "fabricate": ("amounts", "reveal"),
        "reserve_at_max_bid": (),
        "p2pa_revenue_reserve": ("k",),
        "entry_fee_censor": ("fee", "paid_users"),
        "dra_selective_reveal": ("points", "grid"),
        "composite": ("parts",),
    },
}


@dataclass(frozen=True)
class StrategyContext:
    n: int
    distribution: ValueDistribution
    mechanism: MechanismConfig

    def resolve_price(self, value) -> float | None:
        """Numbers pass through; 'monopoly' and 'optimal' are derived from the prior.

        'optimal' is the reserve that maximises revenue net of the mechanism's
        burn, phi^-1(burn), which is the monopoly reserve when nothing burns.
        """
        if value is None:
            return None
        if value == "monopoly":
            return monopoly_reserve_or_fallback(self.distribution)
        if value == "optimal":
            burn = self.mechanism.burn_per_inclusion
            if burn == 0.0:
                return monopoly_reserve_or_fallback(self.distribution)
            return inverse_virtual(self.distribution, burn)
        return float(value)

    @property
    def default_shading_k(self) -> int | None:
        if self.mechanism.kind in {"wpb", "c_k1_pa", "p_k1_pa"}:
            return self.mechanism.k
        return 1


def _import_callable(path: str):
    module_name, _, attribute = path.partition(":")
    if not attribute:
        raise ValueError(f"custom strategy function must be 'module:attr', got {path}")
    return getattr(importlib.import_module(module_name), attribute)


class StrategyFactory:
    @classmethod
    def create_user(cls, spec: StrategySpec, context: StrategyContext) -> UserStrategy:
        params = spec.params
        match spec.name:
            case "truthful":
                return Truthful()
            case "dra_truthful_reveal":
                return DraTruthfulReveal()
            case "threshold":
                return Threshold(reserve=context.resolve_price(params["reserve"]))
            case "fixed":
                return Fixed(amount=float(params["amount"]))
            case "shade_wpb":
                reserve = context.resolve_price(params.get("reserve", 0.0))
                k = params.get("k", context.default_shading_k)
                return ShadeWinnerPaysBid(
                    reserve=reserve,
                    below_reserve=params.get("below_reserve", "bid_value"),
                    table=ShadingTable(context.distribution, context.n, k, reserve),
                )
            case "custom":
                return Custom(
                    function=_import_callable(params["function"]),
                    reveal=bool(params.get("reveal", True)),
                )
        raise ValueError(f"Unknown user strategy: {spec.name}")

    @classmethod
    def create_miner(
        cls, spec: StrategySpec, context: StrategyContext
    ) -> MinerStrategy:
        params = spec.params
        match spec.name:
            case "compliant":
                return Compliant(advice=context.resolve_price(params.get("advice")))
            case "censor":
                return CensorIds(ids=frozenset(int(i) for i in params["ids"]))
            case "censor_lowest_ids":
                return CensorLowestIds(count=int(params["count"]))
            case "fabricate":
                return Fabricate(
                    amounts=tuple(float(a) for a in params["amounts"]),
                    reveal_fabricated=bool(params.get("reveal", True)),
                )
            case "reserve_at_max_bid":
                return ReserveAtMaxBid()
            case "p2pa_revenue_reserve":
                return P2paRevenueReserve(k=params.get("k", context.mechanism.k))
            case "entry_fee_censor":
                return EntryFeeCensor(
                    fee=float(params["fee"]),
                    paid_users=frozenset(int(i) for i in params["paid_users"]),
                )
            case "dra_selective_reveal":
                grid = params.get("grid") or reveal_grid(
                    context.distribution, int(params.get("points", 100))
                )
                return DraSelectiveReveal(grid=tuple(float(a) for a in grid))
            case "composite":
                return Composite(
                    parts=tuple(cls.create_miner(part, context) for part in spec.parts)
                )
        raise ValueError(f"Unknown miner strategy: {spec.name}")

    @classmethod
    def create_profile(
        cls, strategies: StrategiesConfig, context: StrategyContext
    ) -> OnChainProfile:
        default_user = cls.create_user(strategies.users, context)
        users = [
            cls.create_user(strategies.user_overrides[i], context)
            if i in strategies.user_overrides
            else default_user
            for i in range(context.n)
        ]
        return OnChainProfile(
            miner=cls.create_miner(strategies.miner, context),
            users=tuple(users),
            allow_multi_bid=strategies.allow_multi_bid,
        )

    @classmethod
    def vocabulary(cls) -> dict[str, dict[str, tuple[str, ...]]]:
        return STRATEGY_PARAMETERS


def reveal_grid(d: ValueDistribution, points: int) -> list[float]:
    """Fabricated amounts spread over the support, both ends included."""
    return [float(v) for v in np.linspace(d.lo, d.hi_effective, points)]
