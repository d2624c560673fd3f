import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from ranshare.economics import PricingParams
from ranshare.llm import LlmParams, UserBase
from ranshare.platforms import DeploymentMix, load_catalog
from ranshare.profiles import DAILY_FRACTION, PEAK_NORMALIZED, WeeklyProfile, normalize
from ranshare.ran import RanParams

settings.register_profile(
    "ci", derandomize=True, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("ci")


@pytest.fixture(scope="session")
def catalog():
    return load_catalog()


@pytest.fixture(scope="session")
def aerial(catalog):
    return catalog.resolve("Aerial")


@pytest.fixture(scope="session")
def flexran(catalog):
    return catalog.resolve("FlexRAN")


@pytest.fixture(scope="session")
def mix():
    return DeploymentMix()


def flat_peak_profile() -> WeeklyProfile:
    return WeeklyProfile(values=np.ones(168), kind=PEAK_NORMALIZED)


def uniform_daily_profile() -> WeeklyProfile:
    return WeeklyProfile(values=np.full(168, 1 / 24), kind=DAILY_FRACTION)


def milan_ran_params(profile=None, growth=1.0) -> RanParams:
    return RanParams(
        pop_density=7500.0,
        area_km2=20.0,
        penetration=0.8,
        busy_hour_factor=0.1,
        r_user0_mbps=300.0,
        growth_annual=growth,
        se=9.0,
        overhead=0.2,
        profile=profile if profile is not None else flat_peak_profile(),
        pue=1.5,
        elec_usd_per_kwh=0.2,
    )


def milan_llm_params(profile=None, dens=12.87) -> LlmParams:
    return LlmParams(
        t_gpu0=37.0,
        dens_annual=dens,
        max_concurrency=23.5,
        tokens_per_request=969.17,
        q0=14.4,
        demand_growth_annual=16.0,
        ai_adoption=0.5,
        profile=profile if profile is not None else uniform_daily_profile(),
        user_base=UserBase(),
    )


def capacity_pricing(k=1.0, **kwargs) -> PricingParams:
    return PricingParams(price0_usd_per_tok=0.88e-6, k_ratio=k, **kwargs)


def random_profile(rng: np.random.Generator, kind: str) -> WeeklyProfile:
    values = rng.uniform(0.05, 1.0, 168)
    return normalize(values, kind)
