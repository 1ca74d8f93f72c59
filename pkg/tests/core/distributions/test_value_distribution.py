import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from pydantic import ValidationError

from src.core.distributions import ValueDistribution
from src.core.exceptions import ZeroDensityError

PIECEWISE = ValueDistribution(
    kind="piecewise-linear-cdf",
    params={"knots": [0.0, 0.5, 1.0], "cdf": [0.0, 0.7, 1.0]},
)
DISTRIBUTIONS = [
    ValueDistribution(kind="uniform", params={"lo": 0.0, "hi": 1.0}),
    ValueDistribution(kind="exponential", params={"rate": 2.0}),
    ValueDistribution(
        kind="truncated-exponential", params={"rate": 1.0, "lo": 0.0, "hi": 3.0}
    ),
    PIECEWISE,
]


@pytest.mark.parametrize("d", DISTRIBUTIONS, ids=lambda d: d.kind)
@given(u=st.floats(min_value=0.001, max_value=0.999))
def test_quantile_inverts_cdf(d, u):
    assert d.cdf(d.quantile(u)) == pytest.approx(u, abs=1e-9)


@pytest.mark.parametrize("d", DISTRIBUTIONS, ids=lambda d: d.kind)
def test_samples_stay_in_support(d):
    values = d.sample(np.random.default_rng(3), 2000)
    assert values.min() >= d.lo
    assert values.max() <= d.hi


def test_sampling_is_deterministic_for_a_generator_state():
    d = DISTRIBUTIONS[1]
    first = d.sample(np.random.default_rng(11), (4, 3))
    second = d.sample(np.random.default_rng(11), (4, 3))
    assert np.array_equal(first, second)


def test_piecewise_density_is_the_segment_slope():
    assert PIECEWISE.pdf(0.25) == pytest.approx(1.4)
    assert PIECEWISE.pdf(0.75) == pytest.approx(0.6)
    assert PIECEWISE.pdf(1.0) == pytest.approx(0.6)
    assert PIECEWISE.pdf(1.5) == 0.0


def test_uniform_virtual_value():
    d = DISTRIBUTIONS[0]
    assert d.virtual_value(0.8) == pytest.approx(0.6)
    assert np.allclose(d.virtual_value(np.array([0.0, 0.5])), [-1.0, 0.0])


def test_virtual_value_outside_support_raises():
    with pytest.raises(ZeroDensityError) as caught:
        DISTRIBUTIONS[0].virtual_value(1.5)
    assert caught.value.value == 1.5


def test_infinite_support_is_cut_for_grids():
    d = DISTRIBUTIONS[1]
    assert np.isinf(d.hi)
    assert d.survival(d.hi_effective) == pytest.approx(1e-9, rel=1e-3)


@pytest.mark.parametrize(
    "kind, params",
    [
        ("uniform", {"lo": 1.0, "hi": 1.0}),
        ("exponential", {"rate": 0.0}),
        ("truncated-exponential", {"rate": 1.0}),
        ("piecewise-linear-cdf", {"knots": [0.0, 1.0], "cdf": [0.2, 1.0]}),
        ("piecewise-linear-cdf", {"knots": [0.0, 0.5, 0.4], "cdf": [0, 0.5, 1]}),
    ],
)
def test_invalid_parameters_are_rejected(kind, params):
    with pytest.raises(ValidationError):
        ValueDistribution(kind=kind, params=params)
