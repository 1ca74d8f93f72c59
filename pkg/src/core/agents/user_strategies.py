from abc import ABC, abstractmethod
from collections.abc import Callable
from dataclasses import dataclass
from typing import ClassVar, Literal

from src.core.agents.shading import ShadingTable

BelowReserve = Literal["bid_value", "bid_zero"]


class UserStrategy(ABC):
    """Maps a private value to the bids a user submits."""

    name: ClassVar[str]
    reveals: bool = True

    @abstractmethod
    def bids(self, value: float) -> list[float]: ...

    @property
    def is_truthful(self) -> bool:
        return False


@dataclass(frozen=True)
class Truthful(UserStrategy):
    name: ClassVar[str] = "truthful"

    def bids(self, value: float) -> list[float]:
        return [value]

    @property
    def is_truthful(self) -> bool:
        return True


@dataclass(frozen=True)
class DraTruthfulReveal(Truthful):
    """Commit to the value, then reveal it in the decryption phase."""

    name: ClassVar[str] = "dra_truthful_reveal"


@dataclass(frozen=True)
class Threshold(UserStrategy):
    """Bid the reserve when the value clears it, otherwise bid zero."""

    name: ClassVar[str] = "threshold"
    reserve: float

    def bids(self, value: float) -> list[float]:
        return [self.reserve if value >= self.reserve else 0.0]


@dataclass(frozen=True)
class Fixed(UserStrategy):
    name: ClassVar[str] = "fixed"
    amount: float

    def bids(self, value: float) -> list[float]:
        return [self.amount]


@dataclass(frozen=True)
class ShadeWinnerPaysBid(UserStrategy):
    """Pay-your-bid equilibrium: shade above the reserve, fall back below it."""

    name: ClassVar[str] = "shade_wpb"
    reserve: float
    below_reserve: BelowReserve
    table: ShadingTable

    def bids(self, value: float) -> list[float]:
        if value < self.reserve:
            return [value if self.below_reserve == "bid_value" else 0.0]
        return [self.table(value)]


@dataclass(frozen=True)
class Custom(UserStrategy):
    """Any picklable callable value -> list of bids."""

    name: ClassVar[str] = "custom"
    function: Callable[[float], list[float]]
    reveal: bool = True

    def bids(self, value: float) -> list[float]:
        bids = [float(bid) for bid in self.function(value)]
        if any(bid < 0 for bid in bids):
            raise ValueError(f"Custom strategy produced a negative bid: {bids}")
        return bids

    @property
    def reveals(self) -> bool:
        return self.reveal


def user_bid(strategy: UserStrategy, value: float) -> list[float]:
    return strategy.bids(value)
