from collections.abc import Sequence

import numpy as np
from scipy.integrate import quad
from scipy.stats import binom

from src.core.distributions import ValueDistribution
from src.core.exceptions import NumericFailureError

QUAD_TOLERANCE = 1e-8
TABLE_POINTS = 513


def order_statistic_cdf(
    d: ValueDistribution, others: int, k: int | None, y: float
) -> float:
    """P(Y_k <= y) where Y_k is the k-th highest of ``others`` draws.

    Y_k is 0 when there are fewer than k draws (or k is unlimited).
    """
    if k is None or others < k:
        return 1.0 if y >= 0.0 else 0.0
    # Y_k <= y  iff  at most k-1 draws exceed y
    return float(binom.cdf(k - 1, others, d.survival(y)))


def shade_winner_pays_bid(
    d: ValueDistribution, n: int, k: int | None, reserve: float, v: float
) -> float:
    """Symmetric pay-your-bid equilibrium bid, E[max(r, Y_k) | Y_k <= v].

    Integrating by parts gives v - int_r^v G(y) dy / G(v), with G the CDF of
    the k-th highest competing value.
    """
    if v <= reserve:
        return reserve
    others = max(n - 1, 0)

    def cdf(y: float) -> float:
        return order_statistic_cdf(d, others, k, y)

    at_value = cdf(v)
    if at_value <= 0.0:
        return reserve
    integral, error = quad(cdf, reserve, v, epsabs=1e-11, epsrel=1e-10, limit=200)
    if error > QUAD_TOLERANCE:
        raise NumericFailureError(
            f"Shading quadrature error {error:.2e} above {QUAD_TOLERANCE:.0e} "
            f"(n={n}, k={k}, r={reserve}, v={v})"
        )
    return float(v - integral / at_value)


class ShadingTable:
    """Equilibrium bids tabulated on [reserve, top of support].

    Evaluating the quadrature per bid is too slow for Monte Carlo, so the bid
    function is sampled once and interpolated linearly.
    """

    def __init__(
        self,
        d: ValueDistribution,
        n: int,
        k: int | None,
        reserve: float,
        points: int = TABLE_POINTS,
    ):
        self.reserve = float(reserve)
        top = max(d.hi_effective, self.reserve)
        self.values = np.linspace(self.reserve, top, points)
        self.bids = np.array(
            [shade_winner_pays_bid(d, n, k, self.reserve, v) for v in self.values]
        )

    def __call__(self, v: float) -> float:
        if v <= self.reserve:
            return self.reserve
        if v > self.values[-1]:
            # past the truncated tail the bid curve is flat
            return float(self.bids[-1])
        return float(np.interp(v, self.values, self.bids))


def shading_best_response_gap(
    d: ValueDistribution,
    n: int,
    reserve: float,
    values: Sequence[float],
    bids: Sequence[float],
    rng: np.random.Generator,
    samples: int = 1_000_000,
) -> np.ndarray:
    """Best utility over ``bids`` minus the shaded bid's utility, per value.

    Single-slot pay-your-bid; the n - 1 opponents shade and bid 0 below the
    reserve. Every candidate bid is scored against one shared set of opponent
    draws.
    """
    table = ShadingTable(d, n, 1, reserve)
    others = np.asarray(d.sample(rng, (samples, max(n - 1, 0))), dtype=float)
    opponent_bids = np.where(
        others > reserve, np.interp(others, table.values, table.bids), 0.0
    )
    highest = np.sort(opponent_bids.max(axis=1)) if n > 1 else np.zeros(samples)

    def utility(value: float, bid) -> np.ndarray:
        bid = np.asarray(bid, dtype=float)
        wins = np.searchsorted(highest, bid, side="left") / samples
        return np.where(bid >= reserve, (value - bid) * wins, 0.0)

    grid = np.asarray(bids, dtype=float)
    gaps = []
    for value in map(float, values):
        shaded = table(value) if value > reserve else 0.0
        gaps.append(float(utility(value, grid).max() - utility(value, shaded)))
    return np.asarray(gaps)
