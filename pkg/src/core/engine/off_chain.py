from abc import ABC, abstractmethod
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field, replace
from typing import ClassVar

from src.core.agents import MinerStrategy, OnChainProfile
from src.core.engine.on_chain import Play, play_on_chain
from src.core.mechanisms import BlockBuildingProcess

# a user message is a reported value; None is the abstaining bid
Message = float | None


@dataclass(frozen=True)
class Resolution:
    """What an off-chain mechanism commits to for the participating users.

    ``miner`` replaces the miner's on-chain strategy (None keeps it),
    ``bids`` fixes the on-chain bids of participants and ``transfers`` are the
    off-chain payments to the miner (negative values are rebates).
    """

    miner: MinerStrategy | None = None
    bids: Mapping[int, Sequence[float]] = field(default_factory=dict)
    transfers: Mapping[int, float] = field(default_factory=dict)


class OffChainMechanism(ABC):
    name: ClassVar[str]

    @property
    def message_space(self) -> str:
        return "reported value"

    @abstractmethod
    def resolve(self, messages: Mapping[int, float], n: int) -> Resolution:
        """Map the participants' messages to on-chain behaviour and transfers.

        Abstaining users never reach ``resolve``.
        """

    @abstractmethod
    def default_response(self, value: float) -> Message:
        """Documented best response of a user with ``value``."""

    def describe(self) -> dict:
        return {"name": self.name}


@dataclass(frozen=True)
class TrivialOffChain(OffChainMechanism):
    name: ClassVar[str] = "trivial"

    def resolve(self, messages: Mapping[int, float], n: int) -> Resolution:
        return Resolution()

    def default_response(self, value: float) -> Message:
        return None


def play_off_chain(
    mechanism: BlockBuildingProcess,
    off_chain: OffChainMechanism,
    profile: OnChainProfile,
    messages: Sequence[Message],
    values: Sequence[float],
) -> Play:
    """Resolve the off-chain mechanism, play on-chain, then settle transfers."""
    if len(messages) != profile.n:
        raise ValueError(f"Got {len(messages)} messages for {profile.n} users")
    participants = {
        index: float(message)
        for index, message in enumerate(messages)
        if message is not None
    }
    resolution = off_chain.resolve(participants, profile.n)
    bids = {
        index: resolution.bids[index]
        for index in participants
        if index in resolution.bids
    }
    play = play_on_chain(
        mechanism, profile, values, bid_overrides=bids, miner=resolution.miner
    )
    if not resolution.transfers:
        return play

    transfers = [
        resolution.transfers.get(index, 0.0) if index in participants else 0.0
        for index in range(profile.n)
    ]
    return replace(
        play,
        user_utilities=tuple(
            utility - transfer
            for utility, transfer in zip(play.user_utilities, transfers, strict=True)
        ),
        payments=tuple(
            payment + transfer
            for payment, transfer in zip(play.payments, transfers, strict=True)
        ),
        miner_utility=play.miner_utility + sum(transfers),
    )
