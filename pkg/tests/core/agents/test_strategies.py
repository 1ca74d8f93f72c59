import pytest
from hypothesis import given
from hypothesis import strategies as st

from src.core.agents import (
    CensorIds,
    CensorLowestIds,
    Compliant,
    Composite,
    Custom,
    DraSelectiveReveal,
    EntryFeeCensor,
    Fabricate,
    P2paRevenueReserve,
    ReserveAtMaxBid,
    StrategyContext,
    StrategyFactory,
    Threshold,
    dra_reveal,
    equilibrium_profiles,
    miner_act,
)
from src.core.exceptions import InfoViolationError
from src.models.auction import Observation
from src.models.mechanism import MechanismConfig
from src.models.scenario import StrategiesConfig, StrategySpec

PLAINTEXT = Observation(bid_ids=(0, 1, 2), owners=(0, 1, 2), amounts=(0.2, 0.7, 0.5))
SEALED = Observation(bid_ids=(0, 1, 2), owners=(0, 1, 2))


def negative_bids(value: float) -> list[float]:
    return [-value]


def test_threshold_bids_the_reserve_or_nothing():
    strategy = Threshold(reserve=0.5)
    assert strategy.bids(0.7) == [0.5]
    assert strategy.bids(0.3) == [0.0]


def test_custom_strategy_rejects_negative_bids():
    with pytest.raises(ValueError):
        Custom(function=negative_bids).bids(0.4)


def test_composite_chains_left_to_right():
    miner = Composite(
        parts=(Compliant(advice=0.3), CensorLowestIds(count=1), Fabricate((0.9,)))
    )
    action = miner_act(miner, SEALED, "gatekeeper")
    assert action.advice == 0.3
    assert action.include_ids == {1, 2}
    assert action.fabricated == (0.9,)
    assert not miner.is_compliant


def test_plaintext_attacks_are_illegal_behind_a_gatekeeper():
    assert not ReserveAtMaxBid().legal_under("gatekeeper")
    with pytest.raises(InfoViolationError):
        miner_act(ReserveAtMaxBid(), SEALED, "gatekeeper")
    with pytest.raises(InfoViolationError):
        SEALED.plaintext_bids()


def test_reserve_at_max_bid_reads_plaintext():
    assert miner_act(ReserveAtMaxBid(), PLAINTEXT, "plaintext").advice == 0.7


def test_revenue_reserve_over_top_k():
    # 2 * 0.5 beats 1 * 0.7
    action = miner_act(P2paRevenueReserve(k=2), PLAINTEXT, "plaintext")
    assert action.advice == 0.5
    assert miner_act(P2paRevenueReserve(k=1), PLAINTEXT, "plaintext").advice == 0.7


def test_selective_reveal_is_legal_only_with_deferred_decryption():
    miner = DraSelectiveReveal(grid=(0.1, 0.4, 0.8))
    assert miner.legal_under("deferred")
    assert not miner.legal_under("gatekeeper")
    assert dra_reveal(miner, [0.5, 0.3], [0.1, 0.4, 0.8]) == {0, 1}
    assert dra_reveal(miner, [], [0.1, 0.4, 0.8]) == frozenset()


def test_factory_resolves_prior_dependent_prices(uniform):
    context = StrategyContext(
        n=2, distribution=uniform, mechanism=MechanismConfig(kind="c_k1_pa", burn=0.3)
    )
    miner = StrategyFactory.create_miner(
        StrategySpec(name="compliant", params={"advice": "optimal"}), context
    )
    assert miner.advice == pytest.approx(0.65)
    user = StrategyFactory.create_user(
        StrategySpec(name="threshold", params={"reserve": "monopoly"}), context
    )
    assert user.reserve == pytest.approx(0.5)


def test_factory_profile_applies_overrides(uniform):
    context = StrategyContext(
        n=3, distribution=uniform, mechanism=MechanismConfig(kind="c_k1_pa")
    )
    strategies = StrategiesConfig(
        user_overrides={1: StrategySpec(name="fixed", params={"amount": 0.2})}
    )
    profile = StrategyFactory.create_profile(strategies, context)
    assert profile.n == 3
    assert [user.bids(0.6) for user in profile.users] == [[0.6], [0.2], [0.6]]
    assert not profile.all_truthful


def test_unknown_strategies_fail_validation():
    with pytest.raises(ValueError):
        StrategiesConfig(miner=StrategySpec(name="bribe"))


@pytest.mark.parametrize(
    "config, labels",
    [
        (MechanismConfig(kind="eip1559", price=0.3), ["truthful"]),
        (MechanismConfig(kind="wpb"), ["sigma_val", "sigma_0"]),
        (
            MechanismConfig(kind="bomb", reserve=0.5),
            ["posted_price", "winner_pays_bid"],
        ),
        (MechanismConfig(kind="sr2pa"), ["second_price", "first_price"]),
    ],
)
def test_equilibrium_catalogue(config, labels):
    assert list(equilibrium_profiles(config)) == labels


GATEKEEPER_MINERS = [
    Compliant(advice=0.3),
    CensorIds(ids=frozenset({1})),
    CensorLowestIds(count=2),
    Fabricate((0.4, 0.9)),
    EntryFeeCensor(fee=0.1, paid_users=frozenset({0, 3})),
    Composite(
        parts=(Compliant(advice=0.5), CensorLowestIds(count=1), Fabricate((0.6,)))
    ),
]


@given(
    amounts=st.lists(st.floats(min_value=0.0, max_value=2.0), min_size=4, max_size=4),
    data=st.data(),
)
def test_gatekeeper_miners_ignore_bid_amounts(amounts, data):
    shuffled = data.draw(st.permutations(amounts))
    ids = (0, 1, 2, 3)
    seen = Observation(bid_ids=ids, owners=ids, amounts=tuple(amounts))
    permuted = Observation(bid_ids=ids, owners=ids, amounts=tuple(shuffled))
    for miner in GATEKEEPER_MINERS:
        assert miner.legal_under("gatekeeper")
        assert miner_act(miner, permuted, "gatekeeper") == miner_act(
            miner, seen, "gatekeeper"
        )
