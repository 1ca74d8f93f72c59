import numpy as np
from hypothesis import given
from hypothesis import strategies as st

from src.core.engine import block_layout, draw_values


@given(
    reps=st.integers(min_value=1, max_value=10_000),
    block_size=st.integers(min_value=1, max_value=4096),
)
def test_block_layout_covers_every_replication(reps, block_size):
    layout = block_layout(reps, block_size)
    assert [index for index, _ in layout] == list(range(len(layout)))
    assert sum(count for _, count in layout) == reps
    assert all(0 < count <= block_size for _, count in layout)


def test_blocks_are_addressable_independently(uniform):
    first = draw_values(uniform, 3, 7, "revenue", 2, 50)
    again = draw_values(uniform, 3, 7, "revenue", 2, 50)
    other_block = draw_values(uniform, 3, 7, "revenue", 1, 50)
    assert np.array_equal(first, again)
    assert not np.array_equal(first, other_block)


def test_labels_name_separate_streams(uniform):
    revenue = draw_values(uniform, 2, 7, "revenue", 0, 20)
    assert not np.array_equal(revenue, draw_values(uniform, 2, 7, "interim", 0, 20))
    assert not np.array_equal(revenue, draw_values(uniform, 2, 8, "revenue", 0, 20))


def test_pinning_a_user_keeps_the_others(uniform):
    free = draw_values(uniform, 3, 7, "interim", 0, 30)
    pinned = draw_values(uniform, 3, 7, "interim", 0, 30, fixed=(1, 0.75))
    assert np.all(pinned[:, 1] == 0.75)
    assert np.array_equal(np.delete(free, 1, axis=1), np.delete(pinned, 1, axis=1))
