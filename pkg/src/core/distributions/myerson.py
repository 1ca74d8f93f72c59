import numpy as np
from pydantic import BaseModel, Field
from scipy.optimize import bisect

from src.core.distributions.value_distribution import ValueDistribution
from src.core.exceptions import NoRootError, OutOfRangeError
from src.utils.logger import create_logger

logger = create_logger("distributions")

BISECT_XTOL = 1e-12
BISECT_MAXITER = 200
BRACKET_POINTS = 2001


class RegularityReport(BaseModel):
    regular: bool = Field(..., description="phi is non-decreasing on the grid")
    alpha_lower_bound: float = Field(
        ..., description="Smallest slope of phi between grid neighbours, floored at 0"
    )


def default_grid(d: ValueDistribution, points: int = 1000) -> np.ndarray:
    """Evenly spaced interior points of the (effective) support."""
    return np.linspace(d.lo, d.hi_effective, points + 2)[1:-1]


def _bisect(func, lo: float, hi: float) -> float:
    return float(bisect(func, lo, hi, xtol=BISECT_XTOL, maxiter=BISECT_MAXITER))


def monopoly_reserve(d: ValueDistribution) -> float:
    """Smallest price with zero virtual value, i.e. sup{v : phi(v) <= 0}.

    Raises:
        NoRootError: phi keeps one sign on the support. The error carries the
            fallback reserve (``lo`` when phi > 0 everywhere, the top of the
            support when phi < 0 everywhere).
    """
    grid = np.linspace(d.lo, d.hi_effective, BRACKET_POINTS)
    phi = np.asarray(d.virtual_value(grid))
    non_positive = np.flatnonzero(phi <= 0.0)

    if non_positive.size == 0:
        raise NoRootError(
            f"phi > 0 on the whole support of {d.kind}", fallback=float(grid[0])
        )
    last = int(non_positive[-1])
    if last == grid.size - 1:
        raise NoRootError(
            f"phi <= 0 on the whole support of {d.kind}", fallback=float(grid[-1])
        )
    if phi[last] == 0.0:
        return float(grid[last])

    lo, hi = float(grid[last]), float(grid[last + 1])
    jump = None
    for knot in d.knots:
        if not lo <= knot <= hi:
            continue
        left, right = d.virtual_value_limits(knot)
        if right <= 0.0:
            lo, jump = knot, None
        elif left <= 0.0:
            jump = knot
    # phi crosses zero by jumping at a knot; bisection would only approach it
    if jump is not None:
        return jump
    if d.virtual_value(lo) == 0.0:
        return lo
    return _bisect(lambda v: d.virtual_value(v), lo, hi)


def monopoly_reserve_or_fallback(d: ValueDistribution) -> float:
    try:
        return monopoly_reserve(d)
    except NoRootError as error:
        logger.warning(
            f"No monopoly reserve root, using fallback {error.fallback}",
            distribution=d.kind,
        )
        return error.fallback


def inverse_virtual(d: ValueDistribution, w: float) -> float:
    """Value whose virtual value equals ``w``; ``d`` must be regular."""
    lo, hi = d.lo, d.hi_effective
    phi_lo, phi_hi = d.virtual_value(lo), d.virtual_value(hi)
    if not phi_lo - 1e-12 <= w <= phi_hi + 1e-12:
        raise OutOfRangeError(
            f"w={w} outside the range [{phi_lo}, {phi_hi}] of phi for {d.kind}"
        )
    if w <= phi_lo:
        return lo
    if w >= phi_hi:
        return hi
    return _bisect(lambda v: d.virtual_value(v) - w, lo, hi)


def regularity_report(d: ValueDistribution, grid) -> RegularityReport:
    grid = np.asarray(grid, dtype=float)
    if grid.ndim != 1 or grid.size < 2 or np.any(np.diff(grid) <= 0):
        raise ValueError("Regularity grid needs >= 2 strictly increasing points")

    phi = np.asarray(d.virtual_value(grid))
    steps = np.diff(phi)
    slopes = steps / np.diff(grid)
    return RegularityReport(
        regular=bool(np.all(steps >= -1e-9)),
        alpha_lower_bound=max(float(slopes.min()), 0.0),
    )
