import numpy as np

from src.core.agents import OnChainProfile
from src.core.distributions import ValueDistribution
from src.core.engine import (
    USER_PAYMENTS,
    VIRTUAL_WELFARE,
    OnChainTask,
    mean_and_stderr,
    simulate,
)
from src.core.mechanisms import BlockBuildingProcess
from src.models.reports import EquivalenceReport, SimEstimate, VirtualWelfareReport


def revenue_equals_virtual_welfare(
    mechanism: BlockBuildingProcess,
    profile: OnChainProfile,
    d: ValueDistribution,
    reps: int,
    seed: int,
    jobs: int | None = None,
) -> VirtualWelfareReport:
    """Expected user payments against expected virtual welfare, same draws.

    Only meaningful when the users' profile is an equilibrium; the caller is
    responsible for that.
    """
    if profile.n == 0:
        return VirtualWelfareReport(lhs=0.0, rhs=0.0, diff=0.0, std_err=0.0)
    samples = simulate(
        OnChainTask(mechanism, profile), d, reps, seed, "virtual_welfare", jobs=jobs
    )
    lhs, _ = mean_and_stderr(samples[:, USER_PAYMENTS])
    rhs, _ = mean_and_stderr(samples[:, VIRTUAL_WELFARE])
    diff, std_err = mean_and_stderr(
        samples[:, USER_PAYMENTS] - samples[:, VIRTUAL_WELFARE]
    )
    return VirtualWelfareReport(lhs=lhs, rhs=rhs, diff=diff, std_err=std_err)


def check_revenue_equivalence(
    first: SimEstimate, second: SimEstimate, z: float = 3.0
) -> EquivalenceReport:
    difference = first.mean - second.mean
    tolerance = z * float(np.hypot(first.std_err, second.std_err))
    return EquivalenceReport(
        passed=abs(difference) <= tolerance,
        difference=difference,
        tolerance=tolerance,
    )
