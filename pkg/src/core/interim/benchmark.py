"""Revenue ceiling of any mechanism that must route inclusions through the block.

With a burn per inclusion the best a miner can do is serve the (at most k)
users with the largest positive ``phi(v) - burn``.
"""

import numpy as np
from scipy.integrate import quad
from scipy.stats import binom

from src.core.distributions import (
    ValueDistribution,
    default_grid,
    inverse_virtual,
    regularity_report,
)
from src.core.engine import mean_and_stderr
from src.core.engine.streams import iter_value_blocks
from src.core.exceptions import BenchmarkUnavailableError, OutOfRangeError
from src.models.reports import BenchmarkEstimate
from src.settings import simulation_settings
from src.utils.logger import create_logger

logger = create_logger(
    "simulation",
    console_level=simulation_settings.console_log_level,
    file_level=simulation_settings.file_log_level,
)

QUADRATURE_MAX_USERS = 3


def _served_surplus(values: np.ndarray, d: ValueDistribution, k, burn: float):
    surplus = np.clip(np.asarray(d.virtual_value(values)) - burn, 0.0, None)
    if k is None or k >= values.shape[1]:
        return surplus.sum(axis=1)
    top = -np.partition(-surplus, k - 1, axis=1)[:, :k]
    return top.sum(axis=1)


def _break_even(d: ValueDistribution, burn: float) -> float | None:
    """Smallest value with phi(v) >= burn, None if phi never reaches it."""
    try:
        return inverse_virtual(d, burn)
    except OutOfRangeError:
        if burn <= d.virtual_value(d.lo):
            return d.lo
        return None


def quadrature_benchmark(
    d: ValueDistribution, n: int, k: int | None, burn: float
) -> float:
    """Sum over served ranks j of E[(phi(v_(j)) - burn)+], by 1-D quadrature.

    v_(j) is the j-th highest of n values, with density
    n * C(n-1, j-1) * F^(n-j) * (1-F)^(j-1) * f.
    """
    if n == 0:
        return 0.0
    start = _break_even(d, burn)
    if start is None:
        return 0.0
    top = d.hi_effective

    if k is None or k >= n:
        integral, _ = quad(
            lambda v: (d.virtual_value(v) - burn) * d.pdf(v), start, top, limit=200
        )
        return float(n * integral)

    total = 0.0
    for rank in range(1, k + 1):

        def integrand(v: float, rank: int = rank) -> float:
            density = n * binom.pmf(rank - 1, n - 1, d.survival(v)) * d.pdf(v)
            return (d.virtual_value(v) - burn) * density

        integral, _ = quad(integrand, start, top, limit=200)
        total += integral
    return float(total)


def optimal_revenue_benchmark(
    d: ValueDistribution,
    n: int,
    k: int | None,
    burn: float = 0.0,
    reps: int | None = None,
    seed: int = 0,
) -> BenchmarkEstimate:
    """Monte Carlo estimate of the ceiling, cross-checked by quadrature for small n.

    Raises:
        BenchmarkUnavailableError: the distribution is not regular, so the
            ceiling would need ironing.
    """
    if k is not None and k < 1:
        raise ValueError(f"k must be >= 1 or unlimited, got {k}")
    if not regularity_report(d, default_grid(d)).regular:
        raise BenchmarkUnavailableError(
            f"{d.kind} is not regular; ironed benchmarks are not supported"
        )
    if n == 0:
        return BenchmarkEstimate(value=0.0, std_err=0.0, replications=0, quadrature=0.0)

    reps = reps or simulation_settings.benchmark_reps
    totals = np.concatenate(
        [
            _served_surplus(values, d, k, burn)
            for values in iter_value_blocks(
                d, n, reps, seed, "benchmark", simulation_settings.block_size
            )
        ]
    )
    value, std_err = mean_and_stderr(totals)

    quadrature = None
    if n <= QUADRATURE_MAX_USERS:
        quadrature = quadrature_benchmark(d, n, k, burn)
        if abs(quadrature - value) > 4.0 * std_err + 1e-6:
            logger.warning(
                "Benchmark quadrature disagrees with Monte Carlo",
                monte_carlo=value,
                quadrature=quadrature,
                std_err=std_err,
                n=n,
                k=k,
                burn=burn,
            )
    return BenchmarkEstimate(
        value=value,
        std_err=std_err,
        replications=int(totals.size),
        quadrature=quadrature,
    )
