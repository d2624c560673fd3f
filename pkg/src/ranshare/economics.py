"""Surplus allocation, token pricing, revenue, and return-on-investment math.

Money that accumulates (weekly revenue, energy cost, net return) is held as
exact micro-USD integers so cumulative sums are bit-reproducible; per-token
prices and ratios stay floating point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .llm import LlmParams, arrival_rate, gpu_throughput
from .profiles import HOURS_PER_WEEK, weekly_average  # noqa: F401  (weekly_average re-exported)
from .ran import RanParams

CAPACITY = "capacity"
DEMAND = "demand"

ATTR_LLM_ENERGY = "llm_energy"
ATTR_RAN_OPEX = "ran_opex"
ATTR_BOTH = "both"
_ATTRIBUTIONS = (ATTR_LLM_ENERGY, ATTR_RAN_OPEX, ATTR_BOTH)

K_EXPONENT = "exponent"
K_RATIO = "ratio"

MICRO = 1_000_000


def usd_to_micro(x: float) -> int:
    """Round USD to the nearest micro-USD integer."""
    return int(math.floor(x * MICRO + 0.5))


@dataclass(frozen=True)
class PricingParams:
    """Token pricing: launch price plus exactly one depreciation specification.

    Depreciation is given either directly (``tok_depreciation_annual``) or as
    ``k_ratio`` relating price erosion to capability-density growth. The
    default ``k_interpretation`` maps k through the exponent,
    rho_tok = rho_dens**(-k), which makes k=1 the neutral point where price
    deflation exactly cancels efficiency gains; the literal ratio reading
    (rho_tok = k * rho_dens) is available for comparison.
    """

    price0_usd_per_tok: float
    tok_depreciation_annual: Optional[float] = None
    k_ratio: Optional[float] = None
    billing_mode: str = CAPACITY
    k_interpretation: str = K_EXPONENT
    opex_attribution: str = ATTR_LLM_ENERGY

    def __post_init__(self) -> None:
        if self.price0_usd_per_tok <= 0:
            raise ValueError("price0_usd_per_tok must be > 0")
        if (self.tok_depreciation_annual is None) == (self.k_ratio is None):
            raise ValueError("exactly one of tok_depreciation_annual or k_ratio must be set")
        if self.tok_depreciation_annual is not None and not 0 < self.tok_depreciation_annual <= 1:
            raise ValueError("tok_depreciation_annual must be in (0, 1]")
        if self.k_ratio is not None and self.k_ratio < 0:
            raise ValueError("k_ratio must be >= 0")
        if self.billing_mode not in (CAPACITY, DEMAND):
            raise ValueError(f"billing_mode must be '{CAPACITY}' or '{DEMAND}'")
        if self.k_interpretation not in (K_EXPONENT, K_RATIO):
            raise ValueError(f"k_interpretation must be '{K_EXPONENT}' or '{K_RATIO}'")
        if self.opex_attribution not in _ATTRIBUTIONS:
            raise ValueError(f"opex_attribution must be one of {_ATTRIBUTIONS}")


@dataclass(frozen=True)
class AllocationSeries:
    """Per-(week, hour) integer split of the fleet between workloads.

    ``g_ran + g_llm + g_idle == g_total`` holds at every cell; ``unmet_ran``
    records radio demand beyond the fleet (nonzero only past the dimensioning
    week under growth).
    """

    g_ran: np.ndarray       # (W, 168) int64
    g_llm: np.ndarray       # (W, 168) int64
    g_idle: np.ndarray      # (W, 168) int64
    g_required: np.ndarray  # (W, 168) int64, unconstrained inference demand
    unmet_ran: np.ndarray   # (W, 168) int64
    g_total: int

    def __post_init__(self) -> None:
        if not np.array_equal(self.g_ran + self.g_llm + self.g_idle,
                              np.full_like(self.g_ran, self.g_total)):
            raise ValueError("allocation does not conserve the fleet size")
        if np.any(self.g_llm > self.g_required):
            raise ValueError("allocation exceeds inference demand")
        if np.any(self.g_idle < 0) or np.any(self.g_llm < 0) or np.any(self.g_ran < 0):
            raise ValueError("allocation counts must be nonnegative")

    @property
    def weeks(self) -> int:
        return self.g_ran.shape[0]


@dataclass(frozen=True)
class RoiReport:
    """Marginal-investment outcome over the horizon.

    ``break_even_week`` counts weeks of operation needed for the cumulative
    net return to reach the investment (0 when nothing extra was invested,
    None when never reached within the horizon).
    """

    investment_micro: int
    weekly_net_return_micro: np.ndarray
    cumulative_micro: np.ndarray
    break_even_week: Optional[int]
    return_multiple: float

    @property
    def investment_usd(self) -> float:
        return self.investment_micro / MICRO

    @property
    def weekly_net_return_usd(self) -> np.ndarray:
        return self.weekly_net_return_micro / MICRO

    @property
    def cumulative_return_usd(self) -> np.ndarray:
        return self.cumulative_micro / MICRO


def resolve_depreciation(pricing: PricingParams, dens_annual: float) -> float:
    """Annual token-price depreciation factor implied by the pricing config."""
    if pricing.tok_depreciation_annual is not None:
        return pricing.tok_depreciation_annual
    k = pricing.k_ratio
    if pricing.k_interpretation == K_RATIO:
        return k * dens_annual
    return dens_annual ** (-k)


def token_price(pricing: PricingParams, rho_tok: float, w: int) -> float:
    """Market price per token at week ``w``."""
    return pricing.price0_usd_per_tok * rho_tok ** (w / 52)


def allocate(required: int, free: int) -> int:
    """GPUs granted to the inference tenant: demand capped by surplus."""
    if required < 0 or free < 0:
        raise ValueError("required and free must be nonnegative")
    return min(required, free)


def token_throughput(
    g_alloc: int,
    llm_params: LlmParams,
    w: int,
    demand_tok_s: float | None = None,
    billing_mode: str = CAPACITY,
) -> float:
    """Billable token throughput (tokens/s) of ``g_alloc`` allocated GPUs.

    Capacity billing charges the full serving capacity; demand billing caps it
    at the tokens actually demanded (``demand_tok_s``).
    """
    if g_alloc < 0:
        raise ValueError("g_alloc must be nonnegative")
    capacity = g_alloc * llm_params.max_concurrency * gpu_throughput(llm_params, w)
    if billing_mode == DEMAND:
        if demand_tok_s is None:
            raise ValueError("demand billing requires demand_tok_s")
        return min(capacity, demand_tok_s)
    return capacity


def weekly_revenue(
    week_alloc: np.ndarray,
    pricing: PricingParams,
    llm_params: LlmParams,
    w: int,
    rho_tok: float | None = None,
    ran_params: RanParams | None = None,
) -> float:
    """Gross revenue in USD for one week of hourly allocations.

    ``week_alloc`` holds the 168 allocated-GPU counts for week ``w``. Demand
    billing needs ``ran_params`` to reconstruct the arrival rates.
    """
    week_alloc = np.asarray(week_alloc)
    if week_alloc.shape != (HOURS_PER_WEEK,):
        raise ValueError(f"expected {HOURS_PER_WEEK} hourly allocations")
    if rho_tok is None:
        rho_tok = resolve_depreciation(pricing, llm_params.dens_annual)
    price = token_price(pricing, rho_tok, w)
    total = 0.0
    for h in range(HOURS_PER_WEEK):
        demand = None
        if pricing.billing_mode == DEMAND:
            if ran_params is None:
                raise ValueError("demand billing requires ran_params")
            demand = arrival_rate(llm_params, ran_params, w, h) * llm_params.tokens_per_request
        total += token_throughput(int(week_alloc[h]), llm_params, w, demand, pricing.billing_mode)
    return price * total * 3600.0


def llm_energy_cost(week_alloc: np.ndarray, platform, ran_params: RanParams) -> float:
    """Electricity cost in USD of one week of inference allocations."""
    week_alloc = np.asarray(week_alloc)
    if week_alloc.shape != (HOURS_PER_WEEK,):
        raise ValueError(f"expected {HOURS_PER_WEEK} hourly allocations")
    kwh_rate = platform.power_w * ran_params.pue / 1000.0
    return float(week_alloc.sum() * kwh_rate * ran_params.elec_usd_per_kwh)


def marginal_investment(fleet_primary, fleet_baseline) -> float:
    """Extra CapEx of the primary platform over the baseline, in USD."""
    return fleet_primary.capex_usd - fleet_baseline.capex_usd


def net_return(revenue_usd: float, opex_attr_usd: float) -> float:
    """Weekly net return: gross revenue minus the attributed operating cost."""
    return revenue_usd - opex_attr_usd


def break_even_and_roi(returns_micro: np.ndarray, investment_micro: int) -> RoiReport:
    """Cumulative return, break-even week, and return multiple.

    Raises on negative investment: a baseline costlier than the primary
    platform means there is no premium to recover, and the comparison as
    framed does not apply.
    """
    returns_micro = np.asarray(returns_micro, dtype=np.int64)
    if returns_micro.ndim != 1 or returns_micro.size < 1:
        raise ValueError("need at least one week of returns")
    if investment_micro < 0:
        raise ValueError("negative marginal investment: baseline platform is costlier than the primary")
    cumulative = np.cumsum(returns_micro)
    total = int(cumulative[-1])

    break_even: Optional[int]
    if investment_micro == 0:
        break_even = 0
    else:
        hits = np.nonzero(cumulative >= investment_micro)[0]
        break_even = int(hits[0]) + 1 if hits.size else None

    if investment_micro > 0:
        multiple = total / investment_micro
    else:
        multiple = math.inf if total > 0 else 0.0
    return RoiReport(
        investment_micro=int(investment_micro),
        weekly_net_return_micro=returns_micro,
        cumulative_micro=cumulative,
        break_even_week=break_even,
        return_multiple=multiple,
    )
