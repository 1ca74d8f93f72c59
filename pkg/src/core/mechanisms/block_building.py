"""Block-building processes: pure maps from (advice, bids) to an Outcome.

Ties are broken in favour of the smaller bid id everywhere. Capacity ``None``
means unlimited supply.
"""

from collections.abc import Sequence

from src.models.auction import Bid, DraBid, Outcome


def _ranked(bids: Sequence[Bid]) -> list[Bid]:
    return sorted(bids, key=lambda bid: (-bid.amount, bid.id))


def _order_statistic(ranked: list[Bid], position: int | None) -> float:
    """Amount of the ``position``-th highest bid (1-based), 0 if absent."""
    if position is None or position > len(ranked):
        return 0.0
    return ranked[position - 1].amount


def _top_k_at_least(ranked: list[Bid], k: int | None, reserve: float) -> list[Bid]:
    eligible = [bid for bid in ranked if bid.amount >= reserve]
    return eligible if k is None else eligible[:k]


def eip1559(price: float, bids: Sequence[Bid]) -> Outcome:
    included = [bid for bid in bids if bid.amount >= price]
    return Outcome(
        included=frozenset(bid.id for bid in included),
        payments={bid.id: price for bid in included},
        miner_revenue=0.0,
        burned=price * len(included),
    )


def k_plus_one_price(
    k: int | None, reserve: float, bids: Sequence[Bid], burn: float = 0.0
) -> Outcome:
    """Top-k bids at or above the reserve pay max(b^(k+1), reserve).

    With ``burn`` > 0 the burn acts as a floor on the reserve and is destroyed
    for every inclusion; only the excess reaches the miner.
    """
    ranked = _ranked(bids)
    floor = max(reserve, burn)
    winners = _top_k_at_least(ranked, k, floor)
    price = max(_order_statistic(ranked, None if k is None else k + 1), floor)
    return Outcome(
        included=frozenset(bid.id for bid in winners),
        payments={bid.id: price for bid in winners},
        miner_revenue=(price - burn) * len(winners),
        burned=burn * len(winners),
    )


def winner_pays_bid(k: int | None, reserve: float, bids: Sequence[Bid]) -> Outcome:
    winners = _top_k_at_least(_ranked(bids), k, reserve)
    payments = {bid.id: bid.amount for bid in winners}
    return Outcome(
        included=frozenset(payments),
        payments=payments,
        miner_revenue=sum(payments.values()),
    )


def posted_price(reserve: float, bids: Sequence[Bid]) -> Outcome:
    return k_plus_one_price(None, reserve, bids)


def bomb(reserve: float, bids: Sequence[Bid]) -> Outcome:
    if not bids:
        return Outcome()
    top = max(bid.amount for bid in bids)
    if top < reserve:
        return Outcome()
    payments = {bid.id: bid.amount for bid in bids if bid.amount == top}
    return Outcome(
        included=frozenset(payments),
        payments=payments,
        miner_revenue=sum(payments.values()),
    )


def sr2pa(reserve: float, bids: Sequence[Bid]) -> Outcome:
    """Second price with miner reserve; the miner keeps the squared payment."""
    ranked = _ranked(bids)
    if not ranked or ranked[0].amount < reserve:
        return Outcome()
    winner = ranked[0]
    payment = max(_order_statistic(ranked, 2), reserve)
    revenue = payment * payment if payment <= 1.0 else 0.0
    return Outcome(
        included=frozenset({winner.id}),
        payments={winner.id: payment},
        miner_revenue=revenue,
        burned=payment - revenue,
    )


def dra(reserve: float, p_conceal: float, dra_bids: Sequence[DraBid]) -> Outcome:
    revealed = _ranked([dra_bid.bid for dra_bid in dra_bids if dra_bid.reveal])
    concealed = [dra_bid.id for dra_bid in dra_bids if not dra_bid.reveal]

    payments = {bid_id: p_conceal for bid_id in concealed}
    penalties = p_conceal * len(concealed)
    if not revealed or revealed[0].amount < reserve:
        return Outcome(payments=payments, penalties_collected=penalties)

    winner = revealed[0]
    price = max(_order_statistic(revealed, 2), reserve)
    payments[winner.id] = price
    return Outcome(
        included=frozenset({winner.id}),
        payments=payments,
        miner_revenue=price,
        penalties_collected=penalties,
    )
