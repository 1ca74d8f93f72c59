from src.core.interim.benchmark import optimal_revenue_benchmark, quadrature_benchmark
from src.core.interim.identities import (
    check_revenue_equivalence,
    revenue_equals_virtual_welfare,
)
from src.core.interim.interim_rules import check_payment_identity, interim_rules

__all__ = [
    "check_payment_identity",
    "check_revenue_equivalence",
    "interim_rules",
    "optimal_revenue_benchmark",
    "quadrature_benchmark",
    "revenue_equals_virtual_welfare",
]
