from dataclasses import dataclass, field
from typing import Literal

from src.core.exceptions import InfoViolationError

BidOrigin = Literal["user", "fabricated"]


@dataclass(frozen=True, slots=True)
class Bid:
    id: int
    amount: float
    origin: BidOrigin = "user"

    def __post_init__(self):
        if not self.amount >= 0.0:
            raise ValueError(f"Bid {self.id} has negative amount {self.amount}")


@dataclass(frozen=True, slots=True)
class DraBid:
    """A bid submitted to the deferred-revelation auction."""

    bid: Bid
    reveal: bool = True

    @property
    def id(self) -> int:
        return self.bid.id

    @property
    def amount(self) -> float:
        return self.bid.amount


@dataclass(frozen=True, slots=True)
class Outcome:
    included: frozenset[int] = frozenset()
    payments: dict[int, float] = field(default_factory=dict)
    miner_revenue: float = 0.0
    burned: float = 0.0
    penalties_collected: float = 0.0

    def payment_of(self, bid_id: int) -> float:
        return self.payments.get(bid_id, 0.0)

    @property
    def total_payments(self) -> float:
        return sum(self.payments.values())


@dataclass(frozen=True, slots=True)
class MinerAction:
    """What the miner hands to the block-building process.

    ``include_ids`` are the forwarded user bids; ``fabricated`` are amounts the
    miner injects (ids are assigned by the engine). ``reveal_fabricated`` only
    matters in the deferred-revelation model and is the default phase-two
    decision for fabricated bids.
    """

    advice: float | None
    include_ids: frozenset[int]
    fabricated: tuple[float, ...] = ()
    reveal_fabricated: bool = True


@dataclass(frozen=True, slots=True)
class Observation:
    """Miner's view of the mempool.

    Under the gatekeeper model the miner knows who submitted each bid
    (``owners``) but ``amounts`` is None; only plaintext exposes amounts.
    """

    bid_ids: tuple[int, ...]
    owners: tuple[int, ...]
    amounts: tuple[float, ...] | None = None

    def plaintext_bids(self) -> list[Bid]:
        if self.amounts is None:
            raise InfoViolationError(
                "Bid amounts requested but the miner only observes bid ids"
            )
        return [
            Bid(id=bid_id, amount=amount)
            for bid_id, amount in zip(self.bid_ids, self.amounts, strict=True)
        ]
