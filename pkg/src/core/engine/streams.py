"""Named, counter-addressed random substreams.

Replications are grouped into fixed-size blocks. Block ``b`` of the stream
``label`` under root ``seed`` is generated from the seed sequence
``(seed, spawn_key=(label_key(label), b))`` with a Philox bit generator, so any
block can be produced on any worker without touching the others.
"""

import hashlib
from collections.abc import Iterator

import numpy as np

from src.core.distributions import ValueDistribution


def label_key(label: str) -> int:
    digest = hashlib.sha256(label.encode("utf-8")).digest()
    return int.from_bytes(digest[:4], "big")


def substream(seed: int, label: str, block: int) -> np.random.Generator:
    sequence = np.random.SeedSequence(
        entropy=seed, spawn_key=(label_key(label), block)
    )
    return np.random.Generator(np.random.Philox(sequence))


def block_layout(reps: int, block_size: int) -> list[tuple[int, int]]:
    """(block index, replications in block) covering ``reps``."""
    blocks = []
    for index, start in enumerate(range(0, reps, block_size)):
        blocks.append((index, min(block_size, reps - start)))
    return blocks


def draw_values(
    d: ValueDistribution,
    n: int,
    seed: int,
    label: str,
    block: int,
    count: int,
    fixed: tuple[int, float] | None = None,
) -> np.ndarray:
    """A (count, n) matrix of i.i.d. values; ``fixed`` pins one user's column.

    The pinned column is still drawn so the other columns stay identical
    across calls that pin different values (common random numbers).
    """
    rng = substream(seed, label, block)
    values = np.asarray(d.sample(rng, (count, n)), dtype=float).reshape(count, n)
    if fixed is not None:
        index, value = fixed
        values[:, index] = value
    return values


def iter_value_blocks(
    d: ValueDistribution,
    n: int,
    reps: int,
    seed: int,
    label: str,
    block_size: int,
) -> Iterator[np.ndarray]:
    for block, count in block_layout(reps, block_size):
        yield draw_values(d, n, seed, label, block, count)
