"""ranshare: techno-economic scenarios for dual-use RAN + inference GPU fleets.

Dimensions a server fleet from mobile-traffic demand, tracks hour-by-hour
surplus capacity, prices leased inference tokens under depreciation, and
reports revenue, break-even, and return on investment against a
dedicated-accelerator baseline.
"""

from .economics import AllocationSeries, PricingParams, RoiReport
from .engine import ENGINE_VERSION, ResultBundle, ScenarioSpec, run_scenario, run_sweep, validate_spec
from .errors import ConfigError
from .llm import LlmParams, UserBase
from .platforms import (
    CellConfig,
    DeploymentMix,
    PlatformCatalog,
    PlatformSpec,
    TcoBreakdown,
    load_catalog,
)
from .profiles import TraceRecord, TraceSummary, WeeklyProfile, ingest_trace, load_profile
from .ran import FleetPlan, RanParams

__version__ = ENGINE_VERSION

__all__ = [
    "AllocationSeries",
    "CellConfig",
    "ConfigError",
    "DeploymentMix",
    "ENGINE_VERSION",
    "FleetPlan",
    "LlmParams",
    "PlatformCatalog",
    "PlatformSpec",
    "PricingParams",
    "RanParams",
    "ResultBundle",
    "RoiReport",
    "ScenarioSpec",
    "TcoBreakdown",
    "TraceRecord",
    "TraceSummary",
    "UserBase",
    "WeeklyProfile",
    "ingest_trace",
    "load_catalog",
    "load_profile",
    "run_scenario",
    "run_sweep",
    "validate_spec",
    "__version__",
]
