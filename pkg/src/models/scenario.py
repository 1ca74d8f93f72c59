from typing import Any, Literal

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from src.core.distributions import ValueDistribution
from src.models.mechanism import MechanismConfig

CheckerName = Literal[
    "user_simplicity",
    "miner_simplicity",
    "off_chain_influence",
    "strong_collusion",
    "weak_collusion",
    "trustless_collusion",
    "constant_revenue",
    "equilibria",
]
CHECKER_NAMES: tuple[str, ...] = CheckerName.__args__

USER_STRATEGY_NAMES = (
    "truthful",
    "shade_wpb",
    "threshold",
    "fixed",
    "dra_truthful_reveal",
    "custom",
)
MINER_STRATEGY_NAMES = (
    "compliant",
    "censor",
    "censor_lowest_ids",
    "fabricate",
    "reserve_at_max_bid",
    "p2pa_revenue_reserve",
    "entry_fee_censor",
    "dra_selective_reveal",
    "composite",
)


class StrategySpec(BaseModel):
    name: str = Field(..., description="Strategy vocabulary name")
    params: dict[str, Any] = Field(default_factory=dict)
    parts: list["StrategySpec"] = Field(
        default_factory=list, description="Sub-strategies of a composite"
    )

    model_config = ConfigDict(frozen=True)


class StrategiesConfig(BaseModel):
    miner: StrategySpec = Field(
        default_factory=lambda: StrategySpec(name="compliant"),
        description="Miner strategy",
    )
    users: StrategySpec = Field(
        default_factory=lambda: StrategySpec(name="truthful"),
        description="Strategy every user plays unless overridden",
    )
    user_overrides: dict[int, StrategySpec] = Field(
        default_factory=dict, description="Per-user strategies by user index"
    )
    allow_multi_bid: bool = Field(
        False, description="Let custom user strategies submit several bids"
    )

    model_config = ConfigDict(frozen=True)

    @model_validator(mode="after")
    def validate_vocabulary(self):
        def check_miner(spec: StrategySpec):
            if spec.name not in MINER_STRATEGY_NAMES:
                raise ValueError(f"unknown miner strategy '{spec.name}'")
            for part in spec.parts:
                check_miner(part)

        check_miner(self.miner)
        for spec in [self.users, *self.user_overrides.values()]:
            if spec.name not in USER_STRATEGY_NAMES:
                raise ValueError(f"unknown user strategy '{spec.name}'")
        return self


class Thresholds(BaseModel):
    z_threshold: float | None = Field(None, gt=0)
    abs_eps: float | None = Field(None, ge=0)


class Grids(BaseModel):
    value_points: int | None = Field(None, ge=2)
    bid_points: int | None = Field(None, ge=2)
    reserve_points: int | None = Field(None, ge=2)
    fabrication_points: int | None = Field(None, ge=1)
    max_fabricated: int | None = Field(None, ge=0)
    max_censored: int | None = Field(None, ge=0)
    reveal_grid_points: int | None = Field(None, ge=1)
    opp_samples: int | None = Field(None, ge=1)
    conditioning_points: int | None = Field(None, ge=1)


class ScenarioConfig(BaseModel):
    name: str = Field(..., description="Scenario name")
    matrix_row: str | None = Field(None, description="Property matrix row label")
    mechanism: MechanismConfig
    distribution: ValueDistribution
    n: int = Field(2, ge=0, description="Number of users for the checkers")
    n_list: list[int] = Field(
        default_factory=lambda: [2], description="Users per revenue-curve point"
    )
    strategies: StrategiesConfig = Field(default_factory=StrategiesConfig)
    checkers: list[CheckerName] = Field(default_factory=list)
    reps: int = Field(1_000_000, gt=0)
    seed: int = Field(..., ge=0, description="Root seed; no wall-clock default")
    thresholds: Thresholds = Field(default_factory=Thresholds)
    grids: Grids = Field(default_factory=Grids)
    interim_users: list[int] = Field(default_factory=list)
    cartel_user: int = Field(0, ge=0)
    n_range: list[int] = Field(
        default_factory=lambda: [1, 2, 3],
        description="User counts compared by the constant-revenue checker",
    )
    equilibria: list[str] = Field(
        default_factory=list,
        description="Named equilibria compared by the 'equilibria' checker",
    )
    expect: dict[CheckerName, bool] = Field(
        default_factory=dict,
        description="Expected 'no violation found' outcome per checker",
    )

    model_config = ConfigDict(
        extra="forbid",
        json_schema_extra={
            "example": {
                "name": "c2pa",
                "matrix_row": "C2PA",
                "mechanism": {"kind": "c_k1_pa", "k": 1},
                "distribution": {"kind": "uniform", "params": {"lo": 0, "hi": 1}},
                "strategies": {
                    "miner": {"name": "compliant", "params": {"advice": "monopoly"}}
                },
                "checkers": ["user_simplicity", "miner_simplicity"],
                "seed": 7,
            }
        },
    )

    @field_validator("n_list", "n_range")
    @classmethod
    def validate_counts(cls, value: list[int]) -> list[int]:
        if any(count < 0 for count in value):
            raise ValueError(f"user counts must be >= 0, got {value}")
        return value

    @model_validator(mode="after")
    def validate_indices(self):
        for index in [*self.interim_users, *self.strategies.user_overrides]:
            if index >= max(self.n, *self.n_list, 1):
                raise ValueError(f"user index {index} out of range for n={self.n}")
        if self.cartel_user >= max(self.n, 1):
            raise ValueError(f"cartel_user {self.cartel_user} >= n={self.n}")
        return self


class SuiteConfig(BaseModel):
    name: str
    scenarios: list[str] = Field(..., min_length=1)
    golden: str | None = Field(None, description="Golden matrix file")
    reps: int | None = Field(None, gt=0)
    seed: int | None = Field(None, ge=0)

    model_config = ConfigDict(extra="forbid")
