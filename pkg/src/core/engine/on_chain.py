from collections.abc import Mapping, Sequence
from dataclasses import dataclass

from src.core.agents import MinerStrategy, OnChainProfile, dra_reveal, miner_act
from src.core.mechanisms import BlockBuildingProcess
from src.models.auction import Bid, DraBid, Observation, Outcome


@dataclass(frozen=True, slots=True)
class Play:
    """One realised on-chain (or off-chain augmented) game."""

    outcome: Outcome
    user_utilities: tuple[float, ...]
    miner_utility: float
    allocations: tuple[float, ...]
    payments: tuple[float, ...]

    @property
    def total_user_payments(self) -> float:
        return sum(self.payments)


def _collect_bids(
    profile: OnChainProfile,
    values: Sequence[float],
    bid_overrides: Mapping[int, Sequence[float]],
) -> list[list[float]]:
    per_user = []
    for index, (strategy, value) in enumerate(
        zip(profile.users, values, strict=True)
    ):
        if index in bid_overrides:
            amounts = [float(amount) for amount in bid_overrides[index]]
        else:
            amounts = strategy.bids(float(value))
        if len(amounts) > 1 and not profile.allow_multi_bid:
            raise ValueError(
                f"User {index} submitted {len(amounts)} bids; "
                "set allow_multi_bid to evaluate multi-bid strategies"
            )
        per_user.append(amounts)
    return per_user


def play_on_chain(
    mechanism: BlockBuildingProcess,
    profile: OnChainProfile,
    values: Sequence[float],
    bid_overrides: Mapping[int, Sequence[float]] | None = None,
    miner: MinerStrategy | None = None,
) -> Play:
    """Run the on-chain game for one value profile.

    ``bid_overrides`` replaces the bids of selected users (cartel deviations,
    off-chain resolutions); ``miner`` replaces the profile's miner strategy.
    """
    if len(values) != profile.n:
        raise ValueError(f"Got {len(values)} values for {profile.n} users")
    if miner is None:
        miner = profile.miner
    per_user = _collect_bids(profile, values, bid_overrides or {})

    user_bids: list[Bid] = []
    owners: list[int] = []
    for owner, amounts in enumerate(per_user):
        for amount in amounts:
            user_bids.append(Bid(id=len(user_bids), amount=amount))
            owners.append(owner)

    amounts_visible = mechanism.crypto_model == "plaintext"
    observation = Observation(
        bid_ids=tuple(bid.id for bid in user_bids),
        owners=tuple(owners),
        amounts=tuple(bid.amount for bid in user_bids) if amounts_visible else None,
    )
    action = miner_act(miner, observation, mechanism.crypto_model)

    first_fabricated = len(user_bids)
    fabricated = [
        Bid(id=first_fabricated + offset, amount=amount, origin="fabricated")
        for offset, amount in enumerate(action.fabricated)
    ]
    forwarded = [bid for bid in user_bids if bid.id in action.include_ids]

    if mechanism.is_deferred:
        revealed_users = [
            bid for bid in forwarded if profile.users[owners[bid.id]].reveals
        ]
        revealed_set = {bid.id for bid in revealed_users}
        reveal_fabricated = dra_reveal(
            miner,
            [bid.amount for bid in revealed_users],
            list(action.fabricated),
            reveal_by_default=action.reveal_fabricated,
        )
        dra_bids = [DraBid(bid=bid, reveal=bid.id in revealed_set) for bid in forwarded]
        dra_bids += [
            DraBid(bid=bid, reveal=offset in reveal_fabricated)
            for offset, bid in enumerate(fabricated)
        ]
        outcome = mechanism.build_deferred(dra_bids)
    else:
        outcome = mechanism.build(action.advice, forwarded + fabricated)

    allocations = [0.0] * profile.n
    payments = [0.0] * profile.n
    for bid in user_bids:
        owner = owners[bid.id]
        if bid.id in outcome.included:
            allocations[owner] = 1.0
        payments[owner] += outcome.payment_of(bid.id)
    utilities = tuple(
        float(value) * allocation - payment
        for value, allocation, payment in zip(
            values, allocations, payments, strict=True
        )
    )
    fabricated_paid = sum(outcome.payment_of(bid.id) for bid in fabricated)

    return Play(
        outcome=outcome,
        user_utilities=utilities,
        miner_utility=outcome.miner_revenue - fabricated_paid,
        allocations=tuple(allocations),
        payments=tuple(payments),
    )
