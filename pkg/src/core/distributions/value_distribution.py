import math
from typing import Any, Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, PrivateAttr, model_validator
from scipy import stats

from src.core.exceptions import ZeroDensityError

DistributionKind = Literal[
    "uniform", "exponential", "truncated-exponential", "piecewise-linear-cdf"
]

# Infinite supports are cut here for grids and quadrature.
TAIL_MASS = 1e-9


class ValueDistribution(BaseModel):
    """I.i.d. prior over user values.

    Every method accepts a scalar or an array and returns the same shape, so the
    engine can evaluate whole replication blocks at once.
    """

    kind: DistributionKind = Field(..., description="Distribution family")
    params: dict[str, Any] = Field(
        default_factory=dict, description="Family parameters"
    )

    model_config = ConfigDict(
        frozen=True,
        json_schema_extra={
            "examples": [
                {"kind": "uniform", "params": {"lo": 0.0, "hi": 1.0}},
                {"kind": "exponential", "params": {"rate": 1.0}},
                {
                    "kind": "piecewise-linear-cdf",
                    "params": {"knots": [0.0, 0.5, 1.0], "cdf": [0.0, 0.7, 1.0]},
                },
            ]
        },
    )

    _frozen_dist: Any = PrivateAttr(default=None)
    _knots: Any = PrivateAttr(default=None)
    _knot_cdf: Any = PrivateAttr(default=None)
    _slopes: Any = PrivateAttr(default=None)

    @model_validator(mode="after")
    def validate_params(self):
        if self.kind == "uniform":
            lo, hi = self._param("lo", 0.0), self._param("hi", 1.0)
            if not lo < hi:
                raise ValueError(f"uniform requires lo < hi, got lo={lo}, hi={hi}")
        elif self.kind == "exponential":
            if not self._param("rate", 1.0) > 0:
                raise ValueError("exponential requires rate > 0")
        elif self.kind == "truncated-exponential":
            rate = self._param("rate", 1.0)
            lo, hi = self._param("lo", 0.0), self._param("hi", None)
            if not rate > 0:
                raise ValueError("truncated-exponential requires rate > 0")
            if hi is None or not lo < hi or math.isinf(hi):
                raise ValueError("truncated-exponential requires finite hi > lo")
        else:
            knots = np.asarray(self.params.get("knots", []), dtype=float)
            cdf = np.asarray(self.params.get("cdf", []), dtype=float)
            if knots.size < 2 or knots.shape != cdf.shape:
                raise ValueError(
                    "piecewise-linear-cdf requires matching knots and cdf lists "
                    "with at least two entries"
                )
            if np.any(np.diff(knots) <= 0) or np.any(np.diff(cdf) <= 0):
                raise ValueError(
                    "piecewise-linear-cdf knots and cdf values must be strictly "
                    "increasing"
                )
            if cdf[0] != 0.0 or cdf[-1] != 1.0:
                raise ValueError("piecewise-linear-cdf must run from 0 to 1")
        return self

    def model_post_init(self, __context: Any) -> None:
        if self.kind == "uniform":
            lo, hi = self._param("lo", 0.0), self._param("hi", 1.0)
            self._frozen_dist = stats.uniform(loc=lo, scale=hi - lo)
        elif self.kind == "exponential":
            self._frozen_dist = stats.expon(scale=1.0 / self._param("rate", 1.0))
        elif self.kind == "truncated-exponential":
            rate = self._param("rate", 1.0)
            lo, hi = self._param("lo", 0.0), self._param("hi", None)
            self._frozen_dist = stats.truncexpon(
                b=rate * (hi - lo), loc=lo, scale=1.0 / rate
            )
        else:
            self._knots = np.asarray(self.params["knots"], dtype=float)
            self._knot_cdf = np.asarray(self.params["cdf"], dtype=float)
            self._slopes = np.diff(self._knot_cdf) / np.diff(self._knots)

    def __eq__(self, other: object) -> bool:
        # the cached scipy objects and knot arrays are derived from the fields
        if not isinstance(other, ValueDistribution):
            return NotImplemented
        return (self.kind, self.params) == (other.kind, other.params)

    __hash__ = None

    def _param(self, key: str, default):
        value = self.params.get(key, default)
        return None if value is None else float(value)

    @property
    def lo(self) -> float:
        if self._knots is not None:
            return float(self._knots[0])
        return float(self._frozen_dist.support()[0])

    @property
    def hi(self) -> float:
        if self._knots is not None:
            return float(self._knots[-1])
        return float(self._frozen_dist.support()[1])

    @property
    def knots(self) -> tuple[float, ...]:
        """Interior points where the density can jump; empty for smooth families."""
        if self._knots is None:
            return ()
        return tuple(float(k) for k in self._knots[1:-1])

    def virtual_value_limits(self, v: float) -> tuple[float, float]:
        """Left and right limits of phi at ``v``; they differ only at a knot."""
        if v not in self.knots:
            phi = float(self.virtual_value(v))
            return phi, phi
        index = int(np.searchsorted(self._knots, v, side="left"))
        survival = float(self.survival(v))
        return (
            v - survival / float(self._slopes[index - 1]),
            v - survival / float(self._slopes[index]),
        )

    @property
    def hi_effective(self) -> float:
        """Upper support bound, or the 1 - 1e-9 quantile for infinite supports."""
        if math.isinf(self.hi):
            return float(self.quantile(1.0 - TAIL_MASS))
        return self.hi

    def cdf(self, v):
        if self._knots is not None:
            return np.interp(v, self._knots, self._knot_cdf, left=0.0, right=1.0)
        return self._frozen_dist.cdf(v)

    def survival(self, v):
        if self._knots is not None:
            return 1.0 - self.cdf(v)
        return self._frozen_dist.sf(v)

    def pdf(self, v):
        if self._knots is None:
            return self._frozen_dist.pdf(v)
        v_arr = np.asarray(v, dtype=float)
        segment = np.searchsorted(self._knots, v_arr, side="right") - 1
        # the top knot belongs to the last segment
        segment = np.where(v_arr == self._knots[-1], len(self._slopes) - 1, segment)
        inside = (segment >= 0) & (segment < len(self._slopes))
        density = np.where(
            inside, self._slopes[np.clip(segment, 0, len(self._slopes) - 1)], 0.0
        )
        return density if density.ndim else float(density)

    def quantile(self, u):
        if self._knots is not None:
            return np.interp(u, self._knot_cdf, self._knots)
        return self._frozen_dist.ppf(u)

    def virtual_value(self, v):
        """phi(v) = v - (1 - F(v)) / f(v)."""
        density = np.asarray(self.pdf(v), dtype=float)
        if np.any(density <= 0.0):
            bad = np.asarray(v, dtype=float)[density <= 0.0] if density.ndim else v
            raise ZeroDensityError(float(np.ravel(bad)[0]))
        result = np.asarray(v, dtype=float) - self.survival(v) / density
        return result if result.ndim else float(result)

    def sample(self, rng: np.random.Generator, size=None):
        """Inverse-CDF draws; deterministic given the generator state."""
        return self.quantile(rng.random(size))
