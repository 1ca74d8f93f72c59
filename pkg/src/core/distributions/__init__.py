from src.core.distributions.myerson import (
    RegularityReport,
    default_grid,
    inverse_virtual,
    monopoly_reserve,
    monopoly_reserve_or_fallback,
    regularity_report,
)
from src.core.distributions.value_distribution import ValueDistribution

__all__ = [
    "RegularityReport",
    "ValueDistribution",
    "default_grid",
    "inverse_virtual",
    "monopoly_reserve",
    "monopoly_reserve_or_fallback",
    "regularity_report",
]
