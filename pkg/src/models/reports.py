from typing import Any, Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

Verdict = Literal["NO_VIOLATION_FOUND", "VIOLATION"]


class SimEstimate(BaseModel):
    mean: float
    std_err: float = Field(..., ge=0)
    replications: int = Field(..., ge=0)
    seed: int
    per_user_utilities: list[float] | None = None

    @classmethod
    def from_samples(cls, samples, seed: int, **extra) -> "SimEstimate":
        samples = np.asarray(samples, dtype=float)
        count = samples.size
        if count == 0:
            return cls(mean=0.0, std_err=0.0, replications=0, seed=seed, **extra)
        std = float(samples.std(ddof=1)) if count > 1 else 0.0
        return cls(
            mean=float(samples.mean()),
            std_err=std / np.sqrt(count),
            replications=count,
            seed=seed,
            **extra,
        )


class Witness(BaseModel):
    description: str = Field(..., description="Human-readable deviation")
    gain: float
    std_err: float = 0.0
    family: str | None = None
    details: dict[str, Any] = Field(
        default_factory=dict, description="Structured deviation for replay"
    )

    # premise violations carry an infinite gain
    model_config = ConfigDict(ser_json_inf_nan="strings")


class PropertyVerdict(BaseModel):
    property_name: str
    verdict: Verdict
    witness: Witness | None = None
    search_budget: dict[str, Any] = Field(default_factory=dict)
    seed: int
    notes: list[str] = Field(default_factory=list)

    model_config = ConfigDict(
        ser_json_inf_nan="strings",
        json_schema_extra={
            "example": {
                "property_name": "miner_simplicity",
                "verdict": "VIOLATION",
                "witness": {
                    "description": "reserve_at_max_bid",
                    "gain": 0.25,
                    "std_err": 0.0004,
                },
                "search_budget": {"reps": 1000000},
                "seed": 7,
            }
        }
    )

    @property
    def passed(self) -> bool:
        return self.verdict == "NO_VIOLATION_FOUND"


class InterimRules(BaseModel):
    value_grid: list[float]
    x: list[float]
    p: list[float]
    se_x: list[float]
    se_p: list[float]
    user_index: int = 0


class IdentityCheck(BaseModel):
    passed: bool
    max_excess: float = Field(
        ..., description="Largest violation beyond tolerance (<= 0 when passing)"
    )
    worst_value: float | None = None


class VirtualWelfareReport(BaseModel):
    lhs: float
    rhs: float
    diff: float
    std_err: float

    @property
    def within(self) -> bool:
        return abs(self.diff) <= 3.0 * self.std_err + 1e-12


class EquivalenceReport(BaseModel):
    passed: bool
    difference: float
    tolerance: float


class BenchmarkEstimate(BaseModel):
    value: float
    std_err: float
    replications: int
    quadrature: float | None = None


class RankedEquilibrium(BaseModel):
    label: str
    mean: float
    std_err: float


class EquilibriumRanking(BaseModel):
    ranking: list[RankedEquilibrium]


class RevenuePoint(BaseModel):
    scenario: str
    n: int
    mean: float
    stderr: float
    reps: int
    seed: int


class ResultRecord(BaseModel):
    scenario_hash: str
    scenario_name: str
    matrix_row: str | None = None
    verdicts: list[PropertyVerdict] = Field(default_factory=list)
    estimates: list[RevenuePoint] = Field(default_factory=list)
    interim: dict[int, InterimRules] = Field(default_factory=dict)
    rankings: list[EquilibriumRanking] = Field(default_factory=list)
    golden_failures: list[str] = Field(default_factory=list)
    tool_version: str
    timestamp: str


class MatrixRow(BaseModel):
    label: str
    scenario: str
    passed: dict[str, bool] = Field(
        ..., description="'no violation found' per property column"
    )


class PropertyMatrix(BaseModel):
    columns: list[str]
    rows: list[MatrixRow]
    golden_failures: list[str] = Field(default_factory=list)

    @property
    def impossibility_holds(self) -> bool:
        """No row passes every column."""
        return not any(all(row.passed.values()) for row in self.rows)
