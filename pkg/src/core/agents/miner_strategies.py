from abc import ABC, abstractmethod
from collections.abc import Sequence
from dataclasses import dataclass, replace
from typing import ClassVar, Literal

from src.core.exceptions import InfoViolationError
from src.models.auction import MinerAction, Observation

InfoTag = Literal["gatekeeper", "deferred_phase2", "plaintext"]

_TAG_STRICTNESS = {"gatekeeper": 0, "deferred_phase2": 1, "plaintext": 2}
# information tags each crypto model lets the miner act on
LEGAL_TAGS: dict[str, set[str]] = {
    "plaintext": {"gatekeeper", "deferred_phase2", "plaintext"},
    "gatekeeper": {"gatekeeper"},
    "deferred": {"gatekeeper", "deferred_phase2"},
}


class MinerStrategy(ABC):
    """A miner strategy transforms the action built so far.

    ``act`` receives the running action so composites can chain left to right;
    a lone strategy starts from "no advice, forward everything, fabricate
    nothing".
    """

    name: ClassVar[str]
    info_tag: ClassVar[InfoTag] = "gatekeeper"

    @abstractmethod
    def act(self, observation: Observation, action: MinerAction) -> MinerAction: ...

    def reveal(
        self,
        revealed_user_amounts: Sequence[float],
        fabricated: Sequence[float],
        current: frozenset[int],
    ) -> frozenset[int]:
        """Indices of fabricated bids to reveal in the decryption phase."""
        return current

    @property
    def tag(self) -> InfoTag:
        return self.info_tag

    @property
    def is_compliant(self) -> bool:
        return False

    def legal_under(self, crypto_model: str) -> bool:
        return self.tag in LEGAL_TAGS[crypto_model]


@dataclass(frozen=True)
class Compliant(MinerStrategy):
    name: ClassVar[str] = "compliant"
    advice: float | None = None

    def act(self, observation: Observation, action: MinerAction) -> MinerAction:
        return replace(action, advice=self.advice)

    @property
    def is_compliant(self) -> bool:
        return True


@dataclass(frozen=True)
class CensorIds(MinerStrategy):
    name: ClassVar[str] = "censor"
    ids: frozenset[int]

    def act(self, observation: Observation, action: MinerAction) -> MinerAction:
        return replace(action, include_ids=action.include_ids - self.ids)


@dataclass(frozen=True)
class CensorLowestIds(MinerStrategy):
    name: ClassVar[str] = "censor_lowest_ids"
    count: int

    def act(self, observation: Observation, action: MinerAction) -> MinerAction:
        dropped = frozenset(sorted(observation.bid_ids)[: self.count])
        return replace(action, include_ids=action.include_ids - dropped)


@dataclass(frozen=True)
class Fabricate(MinerStrategy):
    name: ClassVar[str] = "fabricate"
    amounts: tuple[float, ...]
    reveal_fabricated: bool = True

    def act(self, observation: Observation, action: MinerAction) -> MinerAction:
        return replace(
            action,
            fabricated=action.fabricated + tuple(self.amounts),
            reveal_fabricated=self.reveal_fabricated,
        )


@dataclass(frozen=True)
class EntryFeeCensor(MinerStrategy):
    """Forward only bids of users who paid the off-chain entry fee."""

    name: ClassVar[str] = "entry_fee_censor"
    fee: float
    paid_users: frozenset[int]

    def act(self, observation: Observation, action: MinerAction) -> MinerAction:
        owners = zip(observation.bid_ids, observation.owners, strict=True)
        paid_ids = {bid_id for bid_id, owner in owners if owner in self.paid_users}
        return replace(action, include_ids=action.include_ids & paid_ids)


@dataclass(frozen=True)
class ReserveAtMaxBid(MinerStrategy):
    """Advice equal to the largest bid: the epsilon -> 0 limit of 'just below'."""

    name: ClassVar[str] = "reserve_at_max_bid"
    info_tag: ClassVar[InfoTag] = "plaintext"

    def act(self, observation: Observation, action: MinerAction) -> MinerAction:
        bids = observation.plaintext_bids()
        return replace(action, advice=max((bid.amount for bid in bids), default=0.0))


@dataclass(frozen=True)
class P2paRevenueReserve(MinerStrategy):
    """Reserve b^(i) maximising i * b^(i) over the first k order statistics."""

    name: ClassVar[str] = "p2pa_revenue_reserve"
    info_tag: ClassVar[InfoTag] = "plaintext"
    k: int | None = 1

    def act(self, observation: Observation, action: MinerAction) -> MinerAction:
        bids = observation.plaintext_bids()
        amounts = sorted((bid.amount for bid in bids), reverse=True)
        if self.k is not None:
            amounts = amounts[: self.k]
        if not amounts:
            return replace(action, advice=0.0)
        best = max(range(len(amounts)), key=lambda i: ((i + 1) * amounts[i], -i))
        return replace(action, advice=amounts[best])


@dataclass(frozen=True)
class DraSelectiveReveal(MinerStrategy):
    """Commit a grid of fake bids, reveal those below the top revealed user bid."""

    name: ClassVar[str] = "dra_selective_reveal"
    info_tag: ClassVar[InfoTag] = "deferred_phase2"
    grid: tuple[float, ...]

    def act(self, observation: Observation, action: MinerAction) -> MinerAction:
        return replace(action, fabricated=action.fabricated + tuple(self.grid))

    def reveal(
        self,
        revealed_user_amounts: Sequence[float],
        fabricated: Sequence[float],
        current: frozenset[int],
    ) -> frozenset[int]:
        if not revealed_user_amounts:
            return frozenset()
        top = max(revealed_user_amounts)
        return frozenset(i for i, amount in enumerate(fabricated) if amount < top)


@dataclass(frozen=True)
class Composite(MinerStrategy):
    name: ClassVar[str] = "composite"
    parts: tuple[MinerStrategy, ...]

    def act(self, observation: Observation, action: MinerAction) -> MinerAction:
        for part in self.parts:
            action = part.act(observation, action)
        return action

    def reveal(
        self,
        revealed_user_amounts: Sequence[float],
        fabricated: Sequence[float],
        current: frozenset[int],
    ) -> frozenset[int]:
        for part in self.parts:
            current = part.reveal(revealed_user_amounts, fabricated, current)
        return current

    @property
    def tag(self) -> InfoTag:
        return max(
            (part.tag for part in self.parts),
            key=_TAG_STRICTNESS.__getitem__,
            default="gatekeeper",
        )

    @property
    def is_compliant(self) -> bool:
        return all(part.is_compliant for part in self.parts)


def initial_action(observation: Observation) -> MinerAction:
    return MinerAction(advice=None, include_ids=frozenset(observation.bid_ids))


def miner_act(
    strategy: MinerStrategy, observation: Observation, crypto_model: str
) -> MinerAction:
    """Run ``strategy`` on what the crypto model lets the miner see."""
    if not strategy.legal_under(crypto_model):
        raise InfoViolationError(
            f"{strategy.name} needs {strategy.tag} information but the mechanism "
            f"runs in the {crypto_model} model"
        )
    return strategy.act(observation, initial_action(observation))


def dra_reveal(
    strategy: MinerStrategy,
    revealed_user_amounts: Sequence[float],
    fabricated: Sequence[float],
    reveal_by_default: bool = True,
) -> frozenset[int]:
    current = frozenset(range(len(fabricated))) if reveal_by_default else frozenset()
    return strategy.reveal(revealed_user_amounts, fabricated, current)
