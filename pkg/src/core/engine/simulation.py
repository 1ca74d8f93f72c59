from abc import ABC, abstractmethod
from collections.abc import Mapping, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from src.core.agents import MinerStrategy, OnChainProfile
from src.core.distributions import ValueDistribution
from src.core.engine.off_chain import Message, OffChainMechanism, play_off_chain
from src.core.engine.on_chain import Play, play_on_chain
from src.core.engine.streams import block_layout, draw_values
from src.core.mechanisms import BlockBuildingProcess
from src.models.reports import SimEstimate
from src.settings import simulation_settings
from src.utils.logger import create_logger

logger = create_logger(
    "simulation",
    console_level=simulation_settings.console_log_level,
    file_level=simulation_settings.file_log_level,
)

MINER_UTILITY = 0
USER_PAYMENTS = 1
VIRTUAL_WELFARE = 2
BURNED = 3
PENALTIES = 4
_FIXED_COLUMNS = 5


@dataclass(frozen=True)
class MetricLayout:
    """Column layout of the per-replication metric rows.

    Fixed columns first, then n user utilities, n allocations, n payments.
    """

    n: int

    @property
    def width(self) -> int:
        return _FIXED_COLUMNS + 3 * self.n

    def utility(self, index: int) -> int:
        return _FIXED_COLUMNS + index

    def allocation(self, index: int) -> int:
        return _FIXED_COLUMNS + self.n + index

    def payment(self, index: int) -> int:
        return _FIXED_COLUMNS + 2 * self.n + index

    @property
    def allocations(self) -> slice:
        return slice(_FIXED_COLUMNS + self.n, _FIXED_COLUMNS + 2 * self.n)

    @property
    def utilities(self) -> slice:
        return slice(_FIXED_COLUMNS, _FIXED_COLUMNS + self.n)


class ReplicationTask(ABC):
    """Maps one row of values to one realised play."""

    profile: OnChainProfile

    @property
    def n(self) -> int:
        return self.profile.n

    @abstractmethod
    def play(self, values: Sequence[float]) -> Play: ...

    def metrics(self, values: Sequence[float]) -> np.ndarray:
        play = self.play(values)
        outcome = play.outcome
        return np.concatenate(
            (
                [
                    play.miner_utility,
                    play.total_user_payments,
                    0.0,
                    outcome.burned,
                    outcome.penalties_collected,
                ],
                play.user_utilities,
                play.allocations,
                play.payments,
            )
        )


@dataclass(frozen=True)
class OnChainTask(ReplicationTask):
    mechanism: BlockBuildingProcess
    profile: OnChainProfile
    bid_overrides: Mapping[int, Sequence[float]] = field(default_factory=dict)
    miner: MinerStrategy | None = None

    def play(self, values: Sequence[float]) -> Play:
        return play_on_chain(
            self.mechanism,
            self.profile,
            values,
            bid_overrides=self.bid_overrides,
            miner=self.miner,
        )


@dataclass(frozen=True)
class OffChainTask(ReplicationTask):
    """Users send the mechanism's documented response unless pinned.

    With ``respond`` False every unpinned user abstains, which models users
    that are oblivious to the off-chain mechanism.
    """

    mechanism: BlockBuildingProcess
    off_chain: OffChainMechanism
    profile: OnChainProfile
    fixed_messages: Mapping[int, Message] = field(default_factory=dict)
    respond: bool = True

    def messages(self, values: Sequence[float]) -> list[Message]:
        messages = []
        for index, value in enumerate(values):
            if index in self.fixed_messages:
                messages.append(self.fixed_messages[index])
            elif self.respond:
                messages.append(self.off_chain.default_response(float(value)))
            else:
                messages.append(None)
        return messages

    def play(self, values: Sequence[float]) -> Play:
        return play_off_chain(
            self.mechanism,
            self.off_chain,
            self.profile,
            self.messages(values),
            values,
        )


def _run_block(
    task: ReplicationTask,
    d: ValueDistribution,
    seed: int,
    label: str,
    block: int,
    count: int,
    fixed: tuple[int, float] | None,
) -> np.ndarray:
    layout = MetricLayout(task.n)
    values = draw_values(d, task.n, seed, label, block, count, fixed)
    metrics = np.empty((count, layout.width))
    for row, value_row in enumerate(values):
        metrics[row] = task.metrics(value_row)

    allocations = metrics[:, layout.allocations]
    allocated = allocations > 0
    if allocated.any():
        phi = np.zeros_like(values)
        phi[allocated] = d.virtual_value(values[allocated])
        metrics[:, VIRTUAL_WELFARE] = (phi * allocations).sum(axis=1)
    else:
        metrics[:, VIRTUAL_WELFARE] = 0.0
    return metrics


def simulate(
    task: ReplicationTask,
    d: ValueDistribution,
    reps: int,
    seed: int,
    label: str,
    fixed: tuple[int, float] | None = None,
    jobs: int | None = None,
    block_size: int | None = None,
) -> np.ndarray:
    """Per-replication metric rows, shape (reps, MetricLayout(n).width).

    Values come from the named substream ``label``; two calls with the same
    (seed, label) see the same value draws, whatever ``jobs`` is.
    """
    if reps < 1:
        raise ValueError(f"reps must be >= 1, got {reps}")
    jobs = jobs or simulation_settings.jobs
    blocks = block_layout(reps, block_size or simulation_settings.block_size)
    arguments = [
        (task, d, seed, label, block, count, fixed) for block, count in blocks
    ]
    if jobs > 1 and len(blocks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as executor:
            parts = list(executor.map(_run_block, *zip(*arguments, strict=True)))
    else:
        parts = [_run_block(*argument) for argument in arguments]
    logger.debug(
        "Simulated replications",
        label=label,
        reps=reps,
        blocks=len(blocks),
        jobs=jobs,
    )
    return np.concatenate(parts, axis=0)


def mean_and_stderr(samples: np.ndarray) -> tuple[float, float]:
    samples = np.asarray(samples, dtype=float)
    if samples.size == 0:
        return 0.0, 0.0
    if samples.size == 1:
        return float(samples[0]), 0.0
    return float(samples.mean()), float(samples.std(ddof=1) / np.sqrt(samples.size))


def paired_gain(baseline: np.ndarray, deviation: np.ndarray) -> tuple[float, float]:
    """Mean and standard error of deviation - baseline on common draws."""
    return mean_and_stderr(np.asarray(deviation) - np.asarray(baseline))


def estimate(
    mechanism: BlockBuildingProcess,
    profile: OnChainProfile,
    d: ValueDistribution,
    reps: int,
    seed: int,
    label: str = "revenue",
    jobs: int | None = None,
) -> SimEstimate:
    """Expected miner utility (revenue when nothing is fabricated)."""
    samples = simulate(OnChainTask(mechanism, profile), d, reps, seed, label, jobs=jobs)
    layout = MetricLayout(profile.n)
    return SimEstimate.from_samples(
        samples[:, MINER_UTILITY],
        seed=seed,
        per_user_utilities=samples[:, layout.utilities].mean(axis=0).tolist(),
    )
