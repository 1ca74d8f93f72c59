"""Shared machinery for the collusion checkers.

A cartel is the miner plus one user. On-chain deviations are scored through
``CartelPlay``; off-chain contracts through ``evaluate_contract``, which lets
the cartel user best-respond (participate with some report, or abstain) at
every value on a grid. ``grid_best_response`` tabulates how users outside
the cartel answer a contract.
"""

from collections.abc import Mapping
from dataclasses import dataclass
from typing import ClassVar

import numpy as np

from src.core.agents import OnChainProfile
from src.core.distributions import inverse_virtual
from src.core.engine import (
    MINER_UTILITY,
    Message,
    MetricLayout,
    OffChainEntryFee,
    OffChainMechanism,
    OffChainTask,
    OnChainTask,
    Resolution,
    ShillRebate,
    TabulatedShill,
    optimal_entry_fee,
)
from src.core.exceptions import OutOfRangeError
from src.evaluation.checkers.base_checker import logger
from src.evaluation.checkers.scenario_setup import ScenarioSetup

SHILL_PILOT_LABEL = "shill_pilot"


@dataclass(frozen=True)
class CartelPlay:
    """Expected miner utility, cartel allocation and cartel payment."""

    miner: float
    allocation: float
    payment: float

    @classmethod
    def of(cls, samples: np.ndarray, layout: MetricLayout, user: int) -> "CartelPlay":
        return cls(
            miner=float(samples[:, MINER_UTILITY].mean()),
            allocation=float(samples[:, layout.allocation(user)].mean()),
            payment=float(samples[:, layout.payment(user)].mean()),
        )

    def user(self, value: float) -> float:
        return value * self.allocation - self.payment

    def joint(self, value: float) -> float:
        return self.miner + self.user(value)


def joint_samples(
    samples: np.ndarray, layout: MetricLayout, user: int, value: float
) -> np.ndarray:
    return (
        samples[:, MINER_UTILITY]
        + value * samples[:, layout.allocation(user)]
        - samples[:, layout.payment(user)]
    )


@dataclass(frozen=True)
class MomentSummary:
    """Means and covariance of (miner utility, cartel allocation, cartel payment).

    Enough to score the cartel user at any value without keeping the samples.
    """

    count: int
    mean: np.ndarray
    cov: np.ndarray

    @classmethod
    def of(cls, samples: np.ndarray, layout: MetricLayout, user: int):
        data = np.column_stack(
            (
                samples[:, MINER_UTILITY],
                samples[:, layout.allocation(user)],
                samples[:, layout.payment(user)],
            )
        )
        count = data.shape[0]
        cov = np.cov(data, rowvar=False) if count > 1 else np.zeros((3, 3))
        return cls(count=count, mean=data.mean(axis=0), cov=np.atleast_2d(cov))

    def _combination(self, weights: np.ndarray) -> tuple[float, float]:
        variance = max(float(weights @ self.cov @ weights), 0.0)
        return float(weights @ self.mean), float(np.sqrt(variance / self.count))

    def miner(self) -> tuple[float, float]:
        return self._combination(np.array([1.0, 0.0, 0.0]))

    def user(self, value: float) -> tuple[float, float]:
        return self._combination(np.array([0.0, value, -1.0]))


@dataclass(frozen=True)
class ContractGains:
    """Per-value gains of the best-responding cartel user and of the miner."""

    values: np.ndarray
    choices: list[float | None]
    user_gain: np.ndarray
    user_se: np.ndarray
    miner_gain: np.ndarray
    miner_se: np.ndarray

    @staticmethod
    def _average(gain: np.ndarray, se: np.ndarray) -> tuple[float, float]:
        # per-value errors combine as independent estimates
        return float(gain.mean()), float(np.sqrt(np.sum(se**2)) / se.size)

    @property
    def ex_ante_user(self) -> tuple[float, float]:
        return self._average(self.user_gain, self.user_se)

    @property
    def ex_ante_miner(self) -> tuple[float, float]:
        return self._average(self.miner_gain, self.miner_se)


def evaluate_contract(
    setup: ScenarioSetup,
    contract: OffChainMechanism,
    profile: OnChainProfile,
    user: int,
    reports: np.ndarray,
    values: np.ndarray,
    respond: bool,
    reps: int,
    label: str,
) -> ContractGains:
    """Score ``contract`` against on-chain play of ``profile``.

    With ``respond`` the other users send the contract's documented response,
    otherwise they abstain. Standard errors of per-value gains ignore the
    (positive) correlation between the two sides, so they are conservative.
    """
    layout = MetricLayout(setup.n)
    mechanism = setup.mechanism

    def summary(task, fixed=None) -> MomentSummary:
        return MomentSummary.of(
            setup.simulate(task, label, reps, fixed=fixed), layout, user
        )

    participate = [
        summary(OffChainTask(mechanism, contract, profile, {user: float(r)}, respond))
        for r in reports
    ]
    choices: list[float | None] = []
    user_gain, user_se, miner_gain, miner_se = [], [], [], []
    for value in values:
        fixed = (user, float(value))
        baseline = summary(OnChainTask(mechanism, profile), fixed)
        best = summary(
            OffChainTask(mechanism, contract, profile, {user: None}, respond), fixed
        )
        choice: float | None = None
        for report, option in zip(reports, participate, strict=True):
            if option.user(value)[0] > best.user(value)[0]:
                best, choice = option, float(report)
        choices.append(choice)

        (chosen, chosen_se), (base, base_se) = best.user(value), baseline.user(value)
        user_gain.append(chosen - base)
        user_se.append(np.hypot(chosen_se, base_se))
        (chosen, chosen_se), (base, base_se) = best.miner(), baseline.miner()
        miner_gain.append(chosen - base)
        miner_se.append(np.hypot(chosen_se, base_se))

    return ContractGains(
        values=np.asarray(values, dtype=float),
        choices=choices,
        user_gain=np.asarray(user_gain),
        user_se=np.asarray(user_se),
        miner_gain=np.asarray(miner_gain),
        miner_se=np.asarray(miner_se),
    )


@dataclass(frozen=True)
class RespondingContract(OffChainMechanism):
    """``contract`` with every unpinned user sending a tabulated response.

    A user sends the response tabulated at the grid value nearest to theirs.
    """

    name: ClassVar[str] = "grid_best_response"
    contract: OffChainMechanism
    values: tuple[float, ...]
    responses: tuple[Message, ...]

    @property
    def message_space(self) -> str:
        return self.contract.message_space

    def resolve(self, messages: Mapping[int, float], n: int) -> Resolution:
        return self.contract.resolve(messages, n)

    def default_response(self, value: float) -> Message:
        return self.responses[int(np.abs(np.asarray(self.values) - value).argmin())]

    def describe(self) -> dict:
        return {**self.contract.describe(), "responses": list(self.responses)}


def grid_best_response(
    setup: ScenarioSetup,
    contract: OffChainMechanism,
    profile: OnChainProfile,
    user: int,
    reports: np.ndarray,
    values: np.ndarray,
    reps: int,
    label: str,
) -> RespondingContract:
    """Best message of ``user`` at each value, abstaining included.

    Every other user ignores ``contract`` while the responses are tabulated.
    """
    layout = MetricLayout(setup.n)

    def summary(message: Message, fixed=None) -> MomentSummary:
        task = OffChainTask(
            setup.mechanism, contract, profile, {user: message}, respond=False
        )
        return MomentSummary.of(
            setup.simulate(task, label, reps, fixed=fixed), layout, user
        )

    participate = [summary(float(report)) for report in reports]
    responses: list[Message] = []
    for value in map(float, values):
        best, choice = summary(None, (user, value)).user(value)[0], None
        for report, option in zip(reports, participate, strict=True):
            utility = option.user(value)[0]
            if utility > best:
                best, choice = utility, float(report)
        responses.append(choice)
    logger.debug(
        "Tabulated grid best response",
        contract=contract.name,
        participating=sum(choice is not None for choice in responses),
    )
    return RespondingContract(
        contract=contract,
        values=tuple(map(float, values)),
        responses=tuple(responses),
    )


def _clipped_inverse_virtual(setup: ScenarioSetup, report: float) -> float:
    d = setup.distribution
    try:
        return inverse_virtual(d, report)
    except OutOfRangeError:
        return d.lo if report < d.virtual_value(d.lo) else d.hi_effective


def tabulated_shill(
    setup: ScenarioSetup,
    profile: OnChainProfile,
    user: int,
    reports: np.ndarray,
    reps: int,
) -> TabulatedShill:
    """Shill contract: bid phi^-1(report), rebate the user's loss plus half the gain.

    Loss and gain are estimated on a pilot run against the profile's own bid.
    """
    layout = MetricLayout(setup.n)

    def play(bids: list[float]) -> CartelPlay:
        task = OnChainTask(setup.mechanism, profile, bid_overrides={user: bids})
        return CartelPlay.of(
            setup.simulate(task, SHILL_PILOT_LABEL, reps), layout, user
        )

    shill_bids, rebates = [], []
    for report in map(float, reports):
        shill_bid = _clipped_inverse_virtual(setup, report)
        shill = play([shill_bid])
        honest = play(profile.users[user].bids(report))
        loss = honest.user(report) - shill.user(report)
        gain = shill.joint(report) - honest.joint(report)
        shill_bids.append(shill_bid)
        rebates.append(loss + max(gain, 0.0) / 2.0)
    logger.debug("Tabulated shill contract", reports=len(shill_bids))
    return TabulatedShill(
        reports=tuple(map(float, reports)),
        shill_bids=tuple(shill_bids),
        rebates=tuple(rebates),
    )


def weak_collusion_contracts(
    setup: ScenarioSetup,
    profile: OnChainProfile,
    user: int,
    reports: np.ndarray,
    pilot_reps: int,
) -> list[OffChainMechanism]:
    """Contracts offered to a single user, in evaluation order."""
    config = setup.mechanism.config
    burn = config.burn_per_inclusion
    advice = getattr(profile.miner, "advice", None)
    contracts: list[OffChainMechanism] = [
        OffChainEntryFee(
            fee=optimal_entry_fee(setup.distribution, burn),
            surplus_price=burn,
            user_strategy=profile.users[user],
            targets=frozenset({user}),
            advice=advice,
        )
    ]
    if advice is not None:
        contracts.append(ShillRebate(bid=advice, rebate_base=advice))
    contracts.append(tabulated_shill(setup, profile, user, reports, pilot_reps))
    return contracts
