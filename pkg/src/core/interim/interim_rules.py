from collections.abc import Sequence

import numpy as np

from src.core.agents import OnChainProfile
from src.core.distributions import ValueDistribution
from src.core.engine import MetricLayout, OnChainTask, mean_and_stderr, simulate
from src.core.exceptions import MonotonicityViolationError
from src.core.mechanisms import BlockBuildingProcess
from src.models.reports import IdentityCheck, InterimRules


def interim_rules(
    mechanism: BlockBuildingProcess,
    profile: OnChainProfile,
    d: ValueDistribution,
    user_index: int,
    grid: Sequence[float],
    reps: int,
    seed: int,
    jobs: int | None = None,
) -> InterimRules:
    """Interim allocation x(v) and payment p(v) of one user on a value grid.

    Every grid point reuses the same draws for the other users.
    """
    grid = [float(v) for v in grid]
    if any(later <= earlier for earlier, later in zip(grid, grid[1:], strict=False)):
        raise ValueError("Interim grid must be strictly increasing")
    if not 0 <= user_index < profile.n:
        raise ValueError(f"user_index {user_index} out of range for n={profile.n}")

    layout = MetricLayout(profile.n)
    task = OnChainTask(mechanism, profile)
    x, p, se_x, se_p = [], [], [], []
    for value in grid:
        samples = simulate(
            task, d, reps, seed, "interim", fixed=(user_index, value), jobs=jobs
        )
        mean_x, err_x = mean_and_stderr(samples[:, layout.allocation(user_index)])
        mean_p, err_p = mean_and_stderr(samples[:, layout.payment(user_index)])
        x.append(mean_x)
        se_x.append(err_x)
        p.append(mean_p)
        se_p.append(err_p)
    return InterimRules(
        value_grid=grid, x=x, p=p, se_x=se_x, se_p=se_p, user_index=user_index
    )


def check_payment_identity(rules: InterimRules, tol: float = 0.01) -> IdentityCheck:
    """Check p(v) - p(v0) = [z x(z)] from v0 to v minus the integral of x.

    x is monotone, so the integral is bracketed by its left and right Riemann
    sums on the grid; the check passes when p(v) - p(v0) lies inside the
    implied interval, widened by ``tol`` plus three propagated standard errors.

    Raises:
        MonotonicityViolationError: x drops by more than three standard errors.
    """
    v = np.asarray(rules.value_grid, dtype=float)
    x = np.asarray(rules.x, dtype=float)
    p = np.asarray(rules.p, dtype=float)
    se_x = np.asarray(rules.se_x, dtype=float)
    se_p = np.asarray(rules.se_p, dtype=float)

    drops = x[:-1] - x[1:]
    noise = 3.0 * np.sqrt(se_x[:-1] ** 2 + se_x[1:] ** 2)
    if np.any(drops > noise + 1e-12):
        worst = int(np.argmax(drops - noise))
        raise MonotonicityViolationError(
            f"Interim allocation drops from {x[worst]:.4f} at v={v[worst]} "
            f"to {x[worst + 1]:.4f} at v={v[worst + 1]}"
        )

    widths = np.diff(v)
    lower_integral = np.concatenate(([0.0], np.cumsum(x[:-1] * widths)))
    upper_integral = np.concatenate(([0.0], np.cumsum(x[1:] * widths)))
    boundary = v * x - v[0] * x[0]
    lhs = p - p[0]
    rhs_low = boundary - upper_integral
    rhs_high = boundary - lower_integral

    propagated = np.sqrt(
        se_p**2 + se_p[0] ** 2 + (v * se_x) ** 2 + (v[0] * se_x[0]) ** 2
    )
    outside = np.maximum(rhs_low - lhs, lhs - rhs_high)
    excess = outside - (tol + 3.0 * propagated)
    worst = int(np.argmax(excess))
    return IdentityCheck(
        passed=bool(excess[worst] <= 0.0),
        max_excess=float(excess[worst]),
        worst_value=float(v[worst]),
    )
