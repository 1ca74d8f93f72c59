"""Off-chain mechanisms a miner can announce next to the on-chain auction.

Each mechanism documents the user response it is evaluated under through
``default_response``.
"""

from collections.abc import Mapping
from dataclasses import dataclass
from typing import ClassVar

import numpy as np

from src.core.agents import (
    Compliant,
    Composite,
    EntryFeeCensor,
    MinerStrategy,
    Truthful,
    UserStrategy,
)
from src.core.distributions import (
    ValueDistribution,
    inverse_virtual,
    monopoly_reserve_or_fallback,
)
from src.core.engine.off_chain import Message, OffChainMechanism, Resolution
from src.core.exceptions import OutOfRangeError
from src.core.mechanisms import BlockBuildingProcess
from src.settings import simulation_settings
from src.utils.logger import create_logger

logger = create_logger(
    "simulation",
    console_level=simulation_settings.console_log_level,
    file_level=simulation_settings.file_log_level,
)

FEE_GRID_POINTS = 201


def _serve_only(
    users, n: int, advice: float | None, targets: frozenset[int] | None = None
) -> MinerStrategy:
    served = frozenset(users)
    if targets is not None:
        served |= frozenset(range(n)) - targets
    censor = EntryFeeCensor(fee=0.0, paid_users=served)
    if advice is None:
        return censor
    return Composite(parts=(Compliant(advice=advice), censor))


@dataclass(frozen=True)
class OffChainPostedPrice(OffChainMechanism):
    """Sell inclusion at ``price`` off-chain; buyers bid ``on_chain_bid``.

    Everyone else is censored.
    """

    name: ClassVar[str] = "off_chain_posted_price"
    price: float
    on_chain_bid: float
    advice: float | None = None

    def resolve(self, messages: Mapping[int, float], n: int) -> Resolution:
        buyers = [index for index, report in messages.items() if report >= self.price]
        return Resolution(
            miner=_serve_only(buyers, n, self.advice),
            bids={
                index: [self.on_chain_bid] if index in buyers else []
                for index in messages
            },
            transfers={index: self.price - self.on_chain_bid for index in buyers},
        )

    def default_response(self, value: float) -> Message:
        return value

    def describe(self) -> dict:
        return {
            "name": self.name,
            "price": self.price,
            "on_chain_bid": self.on_chain_bid,
        }


@dataclass(frozen=True)
class OffChainEntryFee(OffChainMechanism):
    """Charge ``fee`` for not being censored.

    Paying users bid on-chain with ``user_strategy`` at their reported value.
    ``targets`` limits the threat to some users (None threatens everyone).
    A user pays when the on-chain surplus at ``surplus_price`` covers the fee.
    """

    name: ClassVar[str] = "off_chain_entry_fee"
    fee: float
    surplus_price: float = 0.0
    user_strategy: UserStrategy = Truthful()
    targets: frozenset[int] | None = None
    advice: float | None = None

    def resolve(self, messages: Mapping[int, float], n: int) -> Resolution:
        return Resolution(
            miner=_serve_only(messages, n, self.advice, self.targets),
            bids={
                index: self.user_strategy.bids(report)
                for index, report in messages.items()
            },
            transfers={index: self.fee for index in messages},
        )

    def default_response(self, value: float) -> Message:
        return value if value - self.surplus_price >= self.fee else None

    def describe(self) -> dict:
        return {"name": self.name, "fee": self.fee}


@dataclass(frozen=True)
class OffChainSecondPrice(OffChainMechanism):
    """Run a second-price auction off-chain; the winner bids zero on-chain."""

    name: ClassVar[str] = "off_chain_second_price"
    reserve: float

    def resolve(self, messages: Mapping[int, float], n: int) -> Resolution:
        ranked = sorted(messages.items(), key=lambda item: (-item[1], item[0]))
        if not ranked or ranked[0][1] < self.reserve:
            return Resolution(
                miner=_serve_only((), n, 0.0), bids={index: [] for index in messages}
            )
        winner = ranked[0][0]
        second = ranked[1][1] if len(ranked) > 1 else 0.0
        return Resolution(
            miner=_serve_only((winner,), n, 0.0),
            bids={index: [0.0] if index == winner else [] for index in messages},
            transfers={winner: max(second, self.reserve)},
        )

    def default_response(self, value: float) -> Message:
        return value

    def describe(self) -> dict:
        return {"name": self.name, "reserve": self.reserve}


@dataclass(frozen=True)
class SteerToThreshold(OffChainMechanism):
    """Announce the threshold equilibrium: bid ``reserve`` when it is affordable.

    No money changes hands off-chain.
    """

    name: ClassVar[str] = "steer_to_threshold"
    reserve: float

    def resolve(self, messages: Mapping[int, float], n: int) -> Resolution:
        return Resolution(
            bids={
                index: [self.reserve if report >= self.reserve else 0.0]
                for index, report in messages.items()
            }
        )

    def default_response(self, value: float) -> Message:
        return value

    def describe(self) -> dict:
        return {"name": self.name, "reserve": self.reserve}


@dataclass(frozen=True)
class ShillRebate(OffChainMechanism):
    """Bid ``bid`` on-chain; the miner refunds ``rebate_base - report / 2``."""

    name: ClassVar[str] = "shill_rebate"
    bid: float
    rebate_base: float

    def resolve(self, messages: Mapping[int, float], n: int) -> Resolution:
        return Resolution(
            bids={index: [self.bid] for index in messages},
            transfers={
                index: -(self.rebate_base - report / 2.0)
                for index, report in messages.items()
            },
        )

    def default_response(self, value: float) -> Message:
        return value

    def describe(self) -> dict:
        return {"name": self.name, "bid": self.bid, "rebate_base": self.rebate_base}


@dataclass(frozen=True)
class TabulatedShill(OffChainMechanism):
    """Bid a tabulated shill amount for the report and receive a tabulated rebate.

    Tables are interpolated linearly in the report.
    """

    name: ClassVar[str] = "tabulated_shill"
    reports: tuple[float, ...]
    shill_bids: tuple[float, ...]
    rebates: tuple[float, ...]

    def _lookup(self, table: tuple[float, ...], report: float) -> float:
        return float(np.interp(report, self.reports, table))

    def resolve(self, messages: Mapping[int, float], n: int) -> Resolution:
        return Resolution(
            bids={
                index: [self._lookup(self.shill_bids, report)]
                for index, report in messages.items()
            },
            transfers={
                index: -self._lookup(self.rebates, report)
                for index, report in messages.items()
            },
        )

    def default_response(self, value: float) -> Message:
        return value

    def describe(self) -> dict:
        return {"name": self.name, "points": len(self.reports)}


def optimal_entry_fee(d: ValueDistribution, surplus_price: float) -> float:
    """Fee maximising fee * P(v - surplus_price >= fee) on a grid."""
    top = d.hi_effective - surplus_price
    if top <= 0:
        return 0.0
    fees = np.linspace(0.0, top, FEE_GRID_POINTS)
    revenue = fees * np.asarray(d.survival(surplus_price + fees), dtype=float)
    return float(fees[int(np.argmax(revenue))])


def known_off_chain_attacks(
    mechanism: BlockBuildingProcess, d: ValueDistribution, n: int
) -> list[OffChainMechanism]:
    """Attack library for a configured mechanism; empty when none is known."""
    config = mechanism.config
    attacks: list[OffChainMechanism] = []
    match config.kind:
        case "eip1559":
            try:
                attacks.append(
                    OffChainPostedPrice(
                        price=inverse_virtual(d, config.price),
                        on_chain_bid=config.price,
                    )
                )
            except OutOfRangeError as error:
                logger.warning(
                    "Skipping off-chain posted price",
                    price=config.price,
                    reason=str(error),
                )
            attacks.append(
                OffChainEntryFee(
                    fee=optimal_entry_fee(d, config.price), surplus_price=config.price
                )
            )
        case "sr2pa":
            attacks.append(OffChainSecondPrice(reserve=monopoly_reserve_or_fallback(d)))
        case "bomb":
            attacks.append(SteerToThreshold(reserve=float(config.reserve)))
    logger.debug(
        "Attack library",
        kind=config.kind,
        n=n,
        attacks=[attack.name for attack in attacks],
    )
    return attacks
