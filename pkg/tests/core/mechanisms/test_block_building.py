import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.core.mechanisms import block_building
from src.models.auction import Bid, DraBid


def bids_of(*amounts: float) -> list[Bid]:
    return [Bid(id=index, amount=amount) for index, amount in enumerate(amounts)]


def test_eip1559_includes_bids_at_the_price_and_burns_everything():
    outcome = block_building.eip1559(0.3, bids_of(0.2, 0.5, 0.9))
    assert outcome.included == {1, 2}
    assert outcome.payments == {1: 0.3, 2: 0.3}
    assert outcome.miner_revenue == 0.0
    assert outcome.burned == pytest.approx(0.6)


def test_second_price_winner_pays_runner_up():
    outcome = block_building.k_plus_one_price(1, 0.0, bids_of(0.3, 0.8, 0.5))
    assert outcome.included == {1}
    assert outcome.payment_of(1) == pytest.approx(0.5)
    assert outcome.miner_revenue == pytest.approx(0.5)


def test_reserve_binds_when_above_the_next_bid():
    outcome = block_building.k_plus_one_price(2, 0.6, bids_of(0.3, 0.8, 0.5))
    assert outcome.included == {1}
    assert outcome.payment_of(1) == pytest.approx(0.6)


def test_burn_is_a_reserve_floor_and_leaves_only_the_excess():
    outcome = block_building.k_plus_one_price(1, 0.0, bids_of(0.9, 0.5), burn=0.2)
    assert outcome.payment_of(0) == pytest.approx(0.5)
    assert outcome.burned == pytest.approx(0.2)
    assert outcome.miner_revenue == pytest.approx(0.3)


def test_ties_go_to_the_smaller_id():
    outcome = block_building.k_plus_one_price(1, 0.0, bids_of(0.5, 0.5))
    assert outcome.included == {0}
    assert outcome.payment_of(0) == pytest.approx(0.5)


def test_unlimited_capacity_posted_price():
    outcome = block_building.posted_price(0.4, bids_of(0.3, 0.4, 0.9))
    assert outcome.included == {1, 2}
    assert outcome.miner_revenue == pytest.approx(0.8)


def test_winner_pays_bid():
    outcome = block_building.winner_pays_bid(2, 0.1, bids_of(0.05, 0.7, 0.4))
    assert outcome.payments == {1: 0.7, 2: 0.4}
    assert outcome.miner_revenue == pytest.approx(1.1)


def test_bomb_takes_every_maximal_bid():
    outcome = block_building.bomb(0.5, bids_of(0.6, 0.6, 0.4))
    assert outcome.included == {0, 1}
    assert outcome.miner_revenue == pytest.approx(1.2)
    assert block_building.bomb(0.5, bids_of(0.45, 0.2)).included == frozenset()


def test_sr2pa_burns_all_but_the_squared_payment():
    outcome = block_building.sr2pa(0.3, bids_of(0.8, 0.5))
    assert outcome.payment_of(0) == pytest.approx(0.5)
    assert outcome.miner_revenue == pytest.approx(0.25)
    assert outcome.burned == pytest.approx(0.25)


def test_dra_charges_concealed_bids():
    dra_bids = [
        DraBid(Bid(0, 0.9)),
        DraBid(Bid(1, 0.7)),
        DraBid(Bid(2, 0.95), reveal=False),
    ]
    outcome = block_building.dra(0.5, 2.0, dra_bids)
    assert outcome.included == {0}
    assert outcome.payments == {0: 0.7, 2: 2.0}
    assert outcome.miner_revenue == pytest.approx(0.7)
    assert outcome.penalties_collected == pytest.approx(2.0)


def test_dra_without_a_bid_above_reserve_only_collects_penalties():
    dra_bids = [DraBid(Bid(0, 0.4)), DraBid(Bid(1, 0.9), reveal=False)]
    outcome = block_building.dra(0.5, 1.0, dra_bids)
    assert outcome.included == frozenset()
    assert outcome.penalties_collected == pytest.approx(1.0)


amounts = st.lists(st.floats(min_value=0.0, max_value=2.0), max_size=6)
reserves = st.floats(min_value=0.0, max_value=1.5)
capacities = st.one_of(st.none(), st.integers(min_value=1, max_value=4))


@given(
    amounts=amounts,
    reserve=reserves,
    k=capacities,
    burn=st.floats(min_value=0.0, max_value=1.0),
    reveals=st.lists(st.booleans(), min_size=6, max_size=6),
)
def test_payments_are_conserved_for_every_rule(amounts, reserve, k, burn, reveals):
    bids = bids_of(*amounts)
    outcomes = [
        block_building.eip1559(reserve, bids),
        block_building.k_plus_one_price(k, reserve, bids, burn=burn),
        block_building.winner_pays_bid(k, reserve, bids),
        block_building.posted_price(reserve, bids),
        block_building.bomb(reserve, bids),
        block_building.sr2pa(reserve, bids),
        block_building.dra(
            reserve,
            burn,
            [DraBid(bid, reveal) for bid, reveal in zip(bids, reveals, strict=False)],
        ),
    ]
    for outcome in outcomes:
        settled = outcome.miner_revenue + outcome.burned + outcome.penalties_collected
        assert outcome.total_payments == pytest.approx(settled, abs=1e-12)
        assert outcome.included <= set(outcome.payments)
        assert all(payment >= 0 for payment in outcome.payments.values())


def rules(reserve, k, burn):
    """Every rule as a map from user bids to an outcome; DRA bids all reveal."""
    return {
        "eip1559": lambda bids: block_building.eip1559(reserve, bids),
        "k_plus_one_price": lambda bids: block_building.k_plus_one_price(
            k, reserve, bids, burn=burn
        ),
        "winner_pays_bid": lambda bids: block_building.winner_pays_bid(
            k, reserve, bids
        ),
        "posted_price": lambda bids: block_building.posted_price(reserve, bids),
        "bomb": lambda bids: block_building.bomb(reserve, bids),
        "sr2pa": lambda bids: block_building.sr2pa(reserve, bids),
        "dra": lambda bids: block_building.dra(
            reserve, burn, [DraBid(bid) for bid in bids]
        ),
    }


@given(
    amounts=st.lists(st.floats(min_value=0.0, max_value=2.0), min_size=1, max_size=6),
    reserve=reserves,
    k=capacities,
    burn=st.floats(min_value=0.0, max_value=1.0),
    data=st.data(),
)
def test_raising_an_included_bid_keeps_it_included(amounts, reserve, k, burn, data):
    index = data.draw(st.integers(min_value=0, max_value=len(amounts) - 1))
    raise_by = data.draw(st.floats(min_value=0.0, max_value=1.0))
    raised = list(amounts)
    raised[index] += raise_by
    for name, rule in rules(reserve, k, burn).items():
        if index in rule(bids_of(*amounts)).included:
            assert index in rule(bids_of(*raised)).included, name


@given(
    revealed=st.lists(st.floats(min_value=0.0, max_value=2.0), max_size=4),
    concealed=st.lists(st.floats(min_value=0.0, max_value=2.0), max_size=4),
    reserve=reserves,
    p_conceal=st.floats(min_value=0.0, max_value=2.0),
)
def test_concealed_bids_do_not_move_the_revealed_outcome(
    revealed, concealed, reserve, p_conceal
):
    open_bids = [DraBid(bid) for bid in bids_of(*revealed)]
    hidden = [
        DraBid(Bid(id=len(revealed) + index, amount=amount), reveal=False)
        for index, amount in enumerate(concealed)
    ]
    alone = block_building.dra(reserve, p_conceal, open_bids)
    mixed = block_building.dra(reserve, p_conceal, hidden + open_bids)
    assert mixed.included == alone.included
    assert mixed.miner_revenue == alone.miner_revenue
    for bid in open_bids:
        assert mixed.payment_of(bid.id) == alone.payment_of(bid.id)
    assert mixed.penalties_collected == pytest.approx(p_conceal * len(concealed))


def utility(outcome, value: float, user: int = 0) -> float:
    won = user in outcome.included
    return value * won - outcome.payment_of(user)


@settings(max_examples=1000)
@given(
    value=st.floats(min_value=0.0, max_value=2.0),
    deviation=st.floats(min_value=0.0, max_value=2.0),
    others=st.lists(st.floats(min_value=0.0, max_value=2.0), max_size=5),
    reserve=reserves,
    k=capacities,
    burn=st.floats(min_value=0.0, max_value=1.0),
)
def test_truthful_bidding_is_optimal_in_k_plus_one_price(
    value, deviation, others, reserve, k, burn
):
    def outcome(bid):
        return block_building.k_plus_one_price(k, reserve, bids_of(bid, *others), burn)

    truthful = utility(outcome(value), value)
    assert truthful >= utility(outcome(deviation), value) - 1e-12
