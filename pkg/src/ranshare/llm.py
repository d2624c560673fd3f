"""Inference demand over the (week, hour-of-week) grid.

Per-GPU serving throughput improves over time (model capability density), the
per-user request rate compounds separately, and the GPUs needed at any hour
follow from Little's Law: mean concurrency = arrival rate x mean service
time, divided by the concurrency a single GPU sustains.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .profiles import DAILY_FRACTION, WeeklyProfile
from .ran import RanParams, growth_factor

AREA_PRODUCT = "area_product"
EXPLICIT = "explicit"

SECONDS_PER_HOUR = 3600.0


@dataclass(frozen=True)
class UserBase:
    """How the served user population is determined."""

    mode: str = AREA_PRODUCT
    explicit_users: int = 0

    def __post_init__(self) -> None:
        if self.mode not in (AREA_PRODUCT, EXPLICIT):
            raise ValueError(f"user base mode must be '{AREA_PRODUCT}' or '{EXPLICIT}'")
        if self.mode == EXPLICIT and self.explicit_users <= 0:
            raise ValueError("explicit user base requires explicit_users > 0")


@dataclass(frozen=True)
class LlmParams:
    """Inference-side scenario parameters."""

    t_gpu0: float               # per-GPU output throughput at launch, tokens/s
    dens_annual: float          # annual capability-density growth factor
    max_concurrency: float      # sustainable concurrent requests per GPU
    tokens_per_request: float   # mean tokens to process per request
    q0: float                   # requests per user per day at launch
    demand_growth_annual: float
    ai_adoption: float          # fraction of smartphone users who are active users
    profile: WeeklyProfile
    user_base: UserBase = UserBase()

    def __post_init__(self) -> None:
        for name in ("t_gpu0", "dens_annual", "max_concurrency", "tokens_per_request", "demand_growth_annual"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be > 0")
        if self.q0 < 0:
            raise ValueError("q0 must be >= 0")
        if not 0 < self.ai_adoption <= 1:
            raise ValueError("ai_adoption must be in (0, 1]")
        if self.profile.kind != DAILY_FRACTION:
            raise ValueError("LLM profile must be daily_fraction")


def gpu_throughput(params: LlmParams, w: int) -> float:
    """Effective per-GPU token throughput at week ``w``."""
    return params.t_gpu0 * growth_factor(params.dens_annual, w)


def requests_per_user(params: LlmParams, w: int) -> float:
    """Daily requests per user at week ``w``."""
    return params.q0 * growth_factor(params.demand_growth_annual, w)


def llm_users(params: LlmParams, ran_params: RanParams) -> int:
    """Active users in the deployment area."""
    if params.user_base.mode == EXPLICIT:
        return params.user_base.explicit_users
    return round(
        ran_params.area_km2 * ran_params.pop_density * ran_params.penetration * params.ai_adoption
    )


def arrival_rate(params: LlmParams, ran_params: RanParams, w: int, h: int) -> float:
    """Request arrivals per second at (w, h).

    The profile value is the fraction of a day's requests landing in hour
    ``h``, so dividing by 3600 yields a per-second rate.
    """
    return (params.profile[h] / SECONDS_PER_HOUR) * requests_per_user(params, w) * llm_users(params, ran_params)


def required_gpus(params: LlmParams, ran_params: RanParams, w: int, h: int) -> int:
    """GPUs needed to serve the full demand at (w, h) via Little's Law.

    Mean concurrency is arrivals/s x mean service time (tokens per request /
    tokens per second); each GPU absorbs ``max_concurrency`` of it.
    """
    load = demand_coefficient(params, ran_params, w) * params.profile[h]
    return int(math.ceil(load))


def demand_coefficient(params: LlmParams, ran_params: RanParams, w: int) -> float:
    """GPUs of demand per unit of profile value at week ``w``.

    required = ceil(coefficient(w) * profile[h]); the same factoring is used
    by the scalar path and the array kernels so ceil() inputs are identical.
    """
    per_second = requests_per_user(params, w) * llm_users(params, ran_params) / SECONDS_PER_HOUR
    return per_second * params.tokens_per_request / (gpu_throughput(params, w) * params.max_concurrency)
