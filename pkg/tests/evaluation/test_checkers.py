import math

import numpy as np
import pytest

from src.evaluation.checkers import (
    CheckerFactory,
    ConstantRevenueChecker,
    MinerSimplicityChecker,
    OffChainInfluenceChecker,
    PropertyChecker,
    StrongCollusionChecker,
    TrustlessCollusionChecker,
    UserSimplicityChecker,
    WeakCollusionChecker,
    compare_on_chain_equilibria,
    miner_deviations,
    replay_witness,
)
from src.core.engine import known_off_chain_attacks
from src.evaluation.checkers.cartel import ContractGains, grid_best_response
from src.models.reports import Witness
from src.settings import CheckerSettings

C2PA = {"kind": "c_k1_pa", "k": 1}
P2PA = {"kind": "p_k1_pa", "k": 1}
MONOPOLY = {"miner": {"name": "compliant", "params": {"advice": 0.5}}}


class ConstantChecker(PropertyChecker):
    checker_name = "constant"

    def check(self, setup, settings):
        witness = Witness(description="fixed", gain=0.01, std_err=0.001)
        return self.verdict(setup, settings, witness, {})


def test_violation_needs_both_thresholds(make_setup):
    setup = make_setup(C2PA)
    loose = CheckerSettings(name="constant", z_threshold=5.0, abs_eps=1e-4)
    strict = CheckerSettings(name="constant", z_threshold=20.0, abs_eps=1e-4)
    floor = CheckerSettings(name="constant", z_threshold=5.0, abs_eps=0.05)
    assert ConstantChecker(loose)(setup).verdict == "VIOLATION"
    assert ConstantChecker(strict)(setup).passed
    assert ConstantChecker(floor)(setup).passed


def test_significant_witnesses_win_over_larger_noisy_ones():
    checker = ConstantChecker()
    settings = CheckerSettings(name="constant")
    noisy = Witness(description="noisy", gain=0.5, std_err=1.0)
    assert checker.stronger(settings, 0.01, 0.001, noisy)
    assert not checker.stronger(settings, 0.4, 1.0, noisy)
    assert checker.stronger(settings, 0.0, 0.0, None)


def test_checker_factory_vocabulary():
    assert set(CheckerFactory.vocabulary()) == {
        "user_simplicity",
        "miner_simplicity",
        "off_chain_influence",
        "strong_collusion",
        "weak_collusion",
        "trustless_collusion",
        "constant_revenue",
    }
    with pytest.raises(ValueError):
        CheckerFactory.create("bribery")


def test_truthful_bidding_is_dominant_in_second_price(make_setup):
    verdict = UserSimplicityChecker()(make_setup(C2PA, strategies=MONOPOLY))
    assert verdict.passed
    assert verdict.search_budget["opp_samples"] == 20


def test_truthful_bidding_loses_in_pay_your_bid(make_setup):
    verdict = UserSimplicityChecker()(make_setup({"kind": "wpb", "k": 1}))
    assert verdict.verdict == "VIOLATION"
    assert verdict.witness.family == "bid_deviation"
    assert verdict.witness.details["bid"] < verdict.witness.details["value"]


def test_shading_profile_violates_the_premise(make_setup):
    setup = make_setup(
        {"kind": "wpb", "k": 1},
        strategies={"users": {"name": "shade_wpb", "params": {"reserve": 0.0}}},
    )
    verdict = UserSimplicityChecker()(setup)
    assert verdict.verdict == "VIOLATION"
    assert math.isinf(verdict.witness.gain)
    assert verdict.witness.family == "premise"
    assert '"Infinity"' in verdict.model_dump_json()


def test_miner_deviation_families(make_setup):
    setup = make_setup(P2PA, strategies=MONOPOLY)
    settings = setup.checker_settings("miner_simplicity")
    families = [family for family, _ in miner_deviations(setup, settings)]
    assert families.count("reserve") == 6
    assert families.count("censor") == 1
    assert families.count("fabricate") == 3
    assert families[-2:] == ["plaintext", "plaintext"]


def test_reserve_at_max_bid_breaks_plaintext_second_price(make_setup):
    setup = make_setup(P2PA, strategies=MONOPOLY)
    verdict = MinerSimplicityChecker()(setup)
    assert verdict.verdict == "VIOLATION"
    assert verdict.witness.family == "plaintext"
    assert abs(verdict.witness.gain - 0.25) <= 5 * verdict.witness.std_err

    gain, std_err = replay_witness(setup, verdict, reps_factor=1)
    assert abs(gain - 0.25) <= 5 * std_err


def test_gatekeeper_hides_the_plaintext_attacks(make_setup):
    verdict = MinerSimplicityChecker()(make_setup(C2PA, strategies=MONOPOLY))
    assert verdict.passed
    assert verdict.search_budget["illegal_skipped"] == 2


def test_non_compliant_profile_miner_is_a_premise_violation(make_setup):
    setup = make_setup(P2PA, strategies={"miner": {"name": "reserve_at_max_bid"}})
    verdict = MinerSimplicityChecker()(setup)
    assert verdict.witness.family == "premise"


def test_eip1559_miner_revenue_is_constant(make_setup):
    setup = make_setup({"kind": "eip1559", "price": 0.3}, n_range=[1, 2, 3])
    assert ConstantRevenueChecker()(setup).passed


def test_second_price_revenue_grows_with_users(make_setup):
    setup = make_setup(C2PA, strategies=MONOPOLY, n_range=[1, 2])
    verdict = ConstantRevenueChecker()(setup)
    assert verdict.verdict == "VIOLATION"
    assert verdict.witness.details["n"] == [1, 2]


def test_monopoly_second_price_reaches_the_benchmark(make_setup):
    assert OffChainInfluenceChecker()(make_setup(C2PA, strategies=MONOPOLY)).passed


def test_eip1559_leaves_revenue_to_off_chain_mechanisms(make_setup):
    verdict = OffChainInfluenceChecker()(
        make_setup({"kind": "eip1559", "price": 0.3})
    )
    assert verdict.verdict == "VIOLATION"
    assert verdict.search_budget["attacks"] == [
        "off_chain_posted_price",
        "off_chain_entry_fee",
    ]


def test_influence_proof_mechanisms_resist_trustless_collusion(make_setup):
    verdict = TrustlessCollusionChecker()(make_setup(C2PA, strategies=MONOPOLY))
    assert verdict.passed
    assert verdict.witness is None


def test_outsiders_buy_posted_price_inclusion_only_above_the_price(make_setup):
    setup = make_setup({"kind": "eip1559", "price": 0.3}, reps=200)
    attack = known_off_chain_attacks(setup.mechanism, setup.distribution, 2)[0]
    played = grid_best_response(
        setup,
        attack,
        setup.profile(),
        1,
        reports=setup.support_grid(11),
        values=np.array([0.1, 0.9]),
        reps=200,
        label="response",
    )
    assert played.responses[0] is None
    assert played.responses[1] >= attack.price
    assert played.default_response(0.85) == played.responses[1]
    assert played.resolve({}, 2) == attack.resolve({}, 2)


@pytest.mark.slow
def test_trustless_collusion_lists_every_contract_outcome(make_setup):
    setup = make_setup({"kind": "eip1559", "price": 0.3}, reps=4000)
    checker = TrustlessCollusionChecker()
    verdict = checker(setup)
    outcomes = verdict.search_budget["contracts"]
    names = [outcome["contract"] for outcome in outcomes]
    assert names[:2] == ["off_chain_posted_price", "off_chain_entry_fee"]
    assert names[-1] == "tabulated_shill"
    assert verdict.search_budget["bid_points"] == 21
    settings = checker.settings_for(setup)
    for outcome in outcomes:
        assert set(outcome) == {"contract", "gain", "se", "verdict"}
        violated = checker.significant(settings, outcome["gain"], outcome["se"])
        assert (outcome["verdict"] == "VIOLATION") is violated
    assert verdict.passed is all(
        outcome["verdict"] == "NO_VIOLATION_FOUND" for outcome in outcomes
    )


def test_no_contract_pays_both_sides_under_eip1559(make_setup):
    verdict = WeakCollusionChecker()(make_setup({"kind": "eip1559", "price": 0.3}))
    assert verdict.passed
    assert verdict.search_budget["contracts"] == [
        "off_chain_entry_fee",
        "tabulated_shill",
    ]


@pytest.mark.slow
def test_shill_bidding_breaks_second_price_with_reserve(make_setup):
    setup = make_setup(C2PA, strategies=MONOPOLY, reps=16_000)
    verdict = StrongCollusionChecker()(setup)
    assert verdict.verdict == "VIOLATION"
    assert set(verdict.witness.details) >= {"user", "value", "bids", "miner"}


@pytest.mark.slow
@pytest.mark.parametrize("p_conceal, passed", [(0.0, False), (2.0, True)])
def test_concealment_penalty_deters_selective_reveal(make_setup, p_conceal, passed):
    setup = make_setup(
        {"kind": "dra", "reserve": "monopoly", "p_conceal": p_conceal},
        strategies={"users": {"name": "dra_truthful_reveal"}},
    )
    assert MinerSimplicityChecker()(setup).passed is passed


def test_bomb_equilibria_ranking(make_setup):
    setup = make_setup({"kind": "bomb", "reserve": 0.5}, reps=20_000)
    ranking = compare_on_chain_equilibria(setup)
    assert [entry.label for entry in ranking.ranking] == [
        "posted_price",
        "winner_pays_bid",
    ]
    top, runner_up = ranking.ranking
    assert abs(top.mean - 0.5) <= 5 * top.std_err
    assert abs(runner_up.mean - 5 / 12) <= 5 * runner_up.std_err
    with pytest.raises(ValueError):
        compare_on_chain_equilibria(setup, ["first_price"])


def test_ex_ante_error_shrinks_with_the_number_of_values():
    gains = ContractGains(
        values=np.array([0.25, 0.5, 0.75, 1.0]),
        choices=[None, None, 0.5, 0.5],
        user_gain=np.array([0.0, 0.0, 0.02, 0.06]),
        user_se=np.full(4, 0.01),
        miner_gain=np.array([0.1, 0.1, 0.1, 0.1]),
        miner_se=np.array([0.03, 0.04, 0.0, 0.0]),
    )
    assert gains.ex_ante_user == pytest.approx((0.02, 0.005))
    assert gains.ex_ante_miner == pytest.approx((0.1, 0.0125))


def test_larger_budgets_keep_the_plaintext_violation(make_setup):
    small = MinerSimplicityChecker()(make_setup(P2PA, strategies=MONOPOLY))
    grids = {
        "value_points": 11,
        "bid_points": 41,
        "reserve_points": 11,
        "fabrication_points": 5,
        "max_fabricated": 2,
        "max_censored": 2,
        "opp_samples": 40,
        "reveal_grid_points": 21,
        "conditioning_points": 3,
    }
    large = MinerSimplicityChecker()(
        make_setup(P2PA, strategies=MONOPOLY, grids=grids)
    )
    assert small.verdict == large.verdict == "VIOLATION"
    assert large.witness.gain >= small.witness.gain - 5 * small.witness.std_err


CONSISTENCY_SCENARIOS = [
    (C2PA, MONOPOLY),
    ({"kind": "eip1559", "price": 0.3}, {}),
    (
        {"kind": "bomb", "reserve": 0.5},
        {"users": {"name": "threshold", "params": {"reserve": 0.5}}},
    ),
]


@pytest.mark.slow
@pytest.mark.parametrize("mechanism, strategies", CONSISTENCY_SCENARIOS)
def test_weak_collusion_violations_are_strong_ones(make_setup, mechanism, strategies):
    setup = make_setup(mechanism, strategies=strategies)
    weak = WeakCollusionChecker()(setup)
    strong = StrongCollusionChecker()(setup)
    assert not (weak.verdict == "VIOLATION" and strong.passed)


@pytest.mark.slow
@pytest.mark.parametrize("mechanism, strategies", CONSISTENCY_SCENARIOS)
def test_influence_proof_scenarios_are_trustless_collusion_proof(
    make_setup, mechanism, strategies
):
    setup = make_setup(mechanism, strategies=strategies)
    influence = OffChainInfluenceChecker()(setup)
    trustless = TrustlessCollusionChecker()(setup)
    assert not (influence.passed and trustless.verdict == "VIOLATION")
