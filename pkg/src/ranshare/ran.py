"""Radio demand over the (week, hour-of-week) grid and GPU fleet dimensioning.

Demand compounds weekly at an annual growth factor and follows the weekly
shape of the peak-normalized profile. The fleet is sized once, at the
dimensioning week's busy hour; every other hour leaves surplus servers that
can host other workloads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .platforms import DeploymentMix, ResolvedPlatform, mixed_capacity, net_throughput
from .profiles import PEAK_NORMALIZED, WeeklyProfile

WEEKS_PER_YEAR = 52


@dataclass(frozen=True)
class RanParams:
    """Radio-side scenario parameters (demand, efficiency, energy pricing)."""

    pop_density: float          # persons/km^2
    area_km2: float
    penetration: float          # smartphone penetration, fraction of population
    busy_hour_factor: float     # fraction of users concurrently active at the busy hour
    r_user0_mbps: float         # per-user downlink rate at launch
    growth_annual: float        # annual demand growth factor
    se: float                   # spectral efficiency, bit/s/Hz
    overhead: float             # L1/L2 signaling overhead fraction
    profile: WeeklyProfile
    pue: float
    elec_usd_per_kwh: float

    def __post_init__(self) -> None:
        for name in ("pop_density", "area_km2", "growth_annual", "se", "pue", "elec_usd_per_kwh"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be > 0")
        if self.r_user0_mbps < 0:
            raise ValueError("r_user0_mbps must be >= 0")
        for name in ("penetration", "busy_hour_factor"):
            v = getattr(self, name)
            if not 0 < v <= 1:
                raise ValueError(f"{name} must be in (0, 1]")
        if not 0 <= self.overhead < 1:
            raise ValueError("overhead must be in [0, 1)")
        if self.profile.kind != PEAK_NORMALIZED:
            raise ValueError("RAN profile must be peak_normalized")


@dataclass(frozen=True)
class FleetPlan:
    """A dimensioned cluster: size, the (week, hour) it was sized at, and CapEx."""

    g_total: int
    w_dim: int
    h_peak: int
    capex_usd: float
    platform: ResolvedPlatform
    mix: DeploymentMix


def growth_factor(annual: float, w: int) -> float:
    """Compound an annual factor to week ``w``."""
    return annual ** (w / WEEKS_PER_YEAR)


def user_rate(params: RanParams, w: int, h: int) -> float:
    """Per-user downlink rate in Mbps at week ``w``, hour-of-week ``h``."""
    return params.r_user0_mbps * growth_factor(params.growth_annual, w) * params.profile[h]


def area_demand(params: RanParams, w: int, h: int) -> float:
    """Downlink demand per km^2 in Mbps at (w, h)."""
    return params.pop_density * params.penetration * params.busy_hour_factor * user_rate(params, w, h)


def demand_coefficient(params: RanParams, platform: ResolvedPlatform, mix: DeploymentMix) -> float:
    """Servers of demand per unit of (growth factor x profile value).

    The grid evaluation is ceil(coefficient * growth^(w/52) * profile[h]); this
    single factoring is shared by the scalar operations and the array kernels
    so that every path sees bit-identical ceil() inputs.
    """
    c_net = net_throughput(mixed_capacity(platform, mix), params.se, params.overhead)
    return (
        params.area_km2
        * params.pop_density
        * params.penetration
        * params.busy_hour_factor
        * params.r_user0_mbps
        / c_net
    )


def gpus_ran(params: RanParams, platform: ResolvedPlatform, mix: DeploymentMix, w: int, h: int) -> int:
    """Servers required to carry radio demand at (w, h)."""
    load = demand_coefficient(params, platform, mix) * growth_factor(params.growth_annual, w) * params.profile[h]
    return int(math.ceil(load))


def dimension_cluster(
    params: RanParams, platform: ResolvedPlatform, mix: DeploymentMix, w_dim: int
) -> FleetPlan:
    """Size the fleet at the dimensioning week's busy hour.

    The busy hour is the argmax of required servers over the week; ties break
    toward the smallest hour index.
    """
    if w_dim < 0:
        raise ValueError("w_dim must be >= 0")
    coeff = demand_coefficient(params, platform, mix) * growth_factor(params.growth_annual, w_dim)
    per_hour = np.ceil(coeff * params.profile.values).astype(np.int64)
    h_peak = int(per_hour.argmax())
    g_total = int(per_hour[h_peak])
    return FleetPlan(
        g_total=g_total,
        w_dim=w_dim,
        h_peak=h_peak,
        capex_usd=g_total * platform.cost_usd,
        platform=platform,
        mix=mix,
    )


def free_gpus(
    fleet: FleetPlan, params: RanParams, platform: ResolvedPlatform, mix: DeploymentMix, w: int, h: int
) -> int:
    """Servers left over for other workloads at (w, h), clamped at zero.

    The clamp only binds when demand outgrows the fleet (w past the
    dimensioning week under growth); such unmet demand is tracked separately
    by the scenario runner.
    """
    return max(0, fleet.g_total - gpus_ran(params, platform, mix, w, h))


def weekly_opex(params: RanParams, platform: ResolvedPlatform, fleet: FleetPlan, w: int,
                mix: DeploymentMix | None = None) -> float:
    """Electricity cost of the radio workload for week ``w`` in USD.

    Sums the powered server count over all 168 hours; the count is capped at
    the fleet size, which only matters past the dimensioning week.
    """
    mix = mix if mix is not None else fleet.mix
    coeff = demand_coefficient(params, platform, mix) * growth_factor(params.growth_annual, w)
    per_hour = np.minimum(np.ceil(coeff * params.profile.values), fleet.g_total)
    kwh_rate = platform.power_w * params.pue / 1000.0
    return float(per_hour.sum() * kwh_rate * params.elec_usd_per_kwh)
