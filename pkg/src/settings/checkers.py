from pydantic import Field

from src.settings.base_named_settings import BaseNamedSettings


class CheckerSettings(BaseNamedSettings):
    z_threshold: float = Field(
        5.0, gt=0, description="Standard errors a gain must exceed to count."
    )
    abs_eps: float = Field(1e-4, ge=0, description="Absolute floor on a gain.")
    reps: int = Field(1_000_000, gt=0, description="Monte Carlo replications.")
    value_points: int = Field(21, ge=2, description="Points on the value grid.")
    bid_points: int = Field(201, ge=2, description="Points on the bid grid.")
    reserve_points: int = Field(41, ge=2, description="Points on the reserve grid.")
    fabrication_points: int = Field(
        11, ge=1, description="Candidate amounts for fabricated bids."
    )
    max_fabricated: int = Field(3, ge=0, description="Largest fabricated bid count.")
    max_censored: int = Field(
        8, ge=0, description="Largest id-prefix censored by the censor family."
    )
    reveal_grid_points: int = Field(
        100, ge=1, description="Fabricated grid size for selective reveal."
    )
    opp_samples: int = Field(
        200, ge=1, description="Sampled opponent bid profiles (ex-post checks)."
    )
    conditioning_points: int = Field(
        5, ge=1, description="Conditioning values for the constant-revenue check."
    )


def checker_settings(
    name: str, defaults: dict | None = None, **overrides
) -> CheckerSettings:
    """Settings for one checker.

    Explicit overrides win over the environment, which wins over ``defaults``.
    """
    overrides = {key: value for key, value in overrides.items() if value is not None}
    return CheckerSettings(name=name, **overrides).with_defaults(defaults or {})


USER_SIMPLICITY_DEFAULTS = {"abs_eps": 1e-9}
OFF_CHAIN_INFLUENCE_DEFAULTS = {"abs_eps": 1e-3}
CONSTANT_REVENUE_DEFAULTS = {"abs_eps": 1e-3}
