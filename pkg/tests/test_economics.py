import math
from fractions import Fraction

import numpy as np
import pytest

from conftest import capacity_pricing, milan_llm_params, milan_ran_params, uniform_daily_profile
from ranshare.economics import (
    MICRO,
    PricingParams,
    allocate,
    break_even_and_roi,
    llm_energy_cost,
    marginal_investment,
    net_return,
    resolve_depreciation,
    token_price,
    token_throughput,
    usd_to_micro,
    weekly_revenue,
)
from ranshare.engine import run_scenario, validate_spec
from ranshare.ran import dimension_cluster


def test_resolve_depreciation_exponent():
    assert resolve_depreciation(capacity_pricing(k=1.0), 12.87) == pytest.approx(1 / 12.87)
    assert resolve_depreciation(capacity_pricing(k=1.0), 12.87) == pytest.approx(0.077700, abs=5e-7)
    assert resolve_depreciation(capacity_pricing(k=2.0), 12.87) == pytest.approx(12.87**-2)
    assert resolve_depreciation(capacity_pricing(k=2.0), 12.87) == pytest.approx(0.006037302, abs=5e-10)
    assert resolve_depreciation(capacity_pricing(k=0.0), 12.87) == 1.0


def test_resolve_depreciation_direct_and_ratio():
    direct = PricingParams(price0_usd_per_tok=1e-6, tok_depreciation_annual=0.5)
    assert resolve_depreciation(direct, 12.87) == 0.5
    literal = PricingParams(price0_usd_per_tok=1e-6, k_ratio=0.05, k_interpretation="ratio")
    assert resolve_depreciation(literal, 10.0) == pytest.approx(0.5)


def test_pricing_requires_exactly_one_depreciation():
    with pytest.raises(ValueError, match="exactly one"):
        PricingParams(price0_usd_per_tok=1e-6, tok_depreciation_annual=0.5, k_ratio=1.0)
    with pytest.raises(ValueError, match="exactly one"):
        PricingParams(price0_usd_per_tok=1e-6)


def test_token_price_examples():
    pricing = PricingParams(price0_usd_per_tok=0.88e-6, tok_depreciation_annual=0.5)
    assert token_price(pricing, 0.5, 0) == pytest.approx(0.88e-6)
    assert token_price(pricing, 0.5, 52) == pytest.approx(0.44e-6)
    assert token_price(pricing, 1.0, 519) == pytest.approx(0.88e-6)


def test_allocate():
    assert allocate(12, 200) == 12
    assert allocate(50, 20) == 20
    assert allocate(0, 7) == 0
    with pytest.raises(ValueError):
        allocate(-1, 5)


def test_token_throughput_capacity():
    params = milan_llm_params()
    # 12 GPUs x 23.5 req x 37 tok/s
    assert token_throughput(12, params, 0) == pytest.approx(10434.0)
    assert token_throughput(0, params, 0) == 0.0


def test_token_throughput_demand_billing():
    params = milan_llm_params()
    demand = 10.0 * 969.17  # 10 req/s at 969.17 tokens each
    assert token_throughput(12, params, 0, demand_tok_s=demand, billing_mode="demand") == pytest.approx(9691.7)
    # capacity lower than demand: capacity wins
    assert token_throughput(1, params, 0, demand_tok_s=demand, billing_mode="demand") == pytest.approx(869.5)


def test_weekly_revenue_constant_allocation():
    """Hand oracle: 12 GPUs all week bill 12*23.5*37 tok/s for 604800 s at 0.88 $/Mtok.

    12 x 23.5 x 37 = 10434 tok/s; x 604800 s = 6.3104832e9 tok;
    x 0.88e-6 $/tok = $5553.225216.
    """
    params = milan_llm_params()
    pricing = capacity_pricing(k=1.0)
    rev = weekly_revenue(np.full(168, 12), pricing, params, 0, rho_tok=1.0)
    assert rev == pytest.approx(5553.225216, rel=1e-12)
    assert usd_to_micro(rev) == 5553225216


def test_weekly_revenue_demand_billing():
    """Saturated allocation bills demanded tokens, not the ceiling's capacity.

    Uniform profile: 10 req/s x 969.17 tok = 9691.7 tok/s demanded, below the
    12-GPU capacity of 10434 tok/s; weekly = 9691.7 x 604800 x 0.88e-6.
    """
    params = milan_llm_params(uniform_daily_profile())
    ran = milan_ran_params()
    pricing = capacity_pricing(k=1.0, billing_mode="demand")
    rev = weekly_revenue(np.full(168, 12), pricing, params, 0, rho_tok=1.0, ran_params=ran)
    assert rev == pytest.approx(5158.155341, rel=1e-9)
    cap_rev = weekly_revenue(np.full(168, 12), capacity_pricing(k=1.0), params, 0, rho_tok=1.0)
    assert rev < cap_rev


def test_weekly_revenue_zero_and_linearity():
    params = milan_llm_params()
    pricing = capacity_pricing(k=1.0)
    assert weekly_revenue(np.zeros(168), pricing, params, 0, rho_tok=1.0) == 0.0
    double_price = PricingParams(price0_usd_per_tok=1.76e-6, k_ratio=1.0)
    assert weekly_revenue(np.full(168, 5), double_price, params, 0, rho_tok=1.0) == pytest.approx(
        2 * weekly_revenue(np.full(168, 5), pricing, params, 0, rho_tok=1.0)
    )


def test_llm_energy_cost(aerial):
    ran = milan_ran_params()
    # 12 GPUs x 168 h x (1.2 kW x 1.5 PUE) x 0.2 $/kWh = $725.76
    assert llm_energy_cost(np.full(168, 12), aerial, ran) == pytest.approx(725.76)
    assert llm_energy_cost(np.zeros(168), aerial, ran) == 0.0
    double_pue = milan_ran_params().__class__(**{**ran.__dict__, "pue": 3.0})
    assert llm_energy_cost(np.full(168, 12), aerial, double_pue) == pytest.approx(2 * 725.76)


def test_marginal_investment(aerial, flexran, mix):
    params = milan_ran_params()
    s1_a = dimension_cluster(params, aerial, mix, 0)
    s1_f = dimension_cluster(params, flexran, mix, 0)
    assert marginal_investment(s1_a, s1_f) == pytest.approx(624_600)
    growth = milan_ran_params(growth=1.2)
    s2_a = dimension_cluster(growth, aerial, mix, 520)
    s2_f = dimension_cluster(growth, flexran, mix, 520)
    assert marginal_investment(s2_a, s2_f) == pytest.approx(3_801_000)
    assert marginal_investment(s1_a, s1_a) == 0.0


def test_net_return():
    assert net_return(5553.225216, 725.76) == pytest.approx(4827.465216)
    assert net_return(0.0, 0.0) == 0.0


def test_break_even_constant_returns():
    returns = np.full(100, 10_000 * MICRO, dtype=np.int64)
    roi = break_even_and_roi(returns, 620_000 * MICRO)
    assert roi.break_even_week == 62
    assert roi.return_multiple == pytest.approx(1_000_000 / 620_000)
    assert np.array_equal(roi.cumulative_micro, np.cumsum(returns))


def test_break_even_never_reached():
    returns = np.full(10, 1 * MICRO, dtype=np.int64)
    roi = break_even_and_roi(returns, 1_000 * MICRO)
    assert roi.break_even_week is None
    assert roi.return_multiple == pytest.approx(10 / 1000)


def test_break_even_zero_cases():
    zero_returns = np.zeros(5, dtype=np.int64)
    roi = break_even_and_roi(zero_returns, 0)
    assert roi.return_multiple == 0.0
    assert roi.break_even_week == 0
    roi2 = break_even_and_roi(np.full(5, MICRO, dtype=np.int64), 0)
    assert roi2.return_multiple == math.inf


def test_break_even_negative_investment_rejected():
    with pytest.raises(ValueError, match="negative"):
        break_even_and_roi(np.ones(5, dtype=np.int64), -1)


def test_rational_brute_force_revenue_oracle(catalog):
    """Exhaustive hour-by-hour recomputation of a toy scenario in exact arithmetic.

    The per-week growth factors are taken from the engine as exact binary
    rationals; everything downstream (profiles, ceilings, allocation, billing,
    weekly sums) is recomputed with Fraction and must match the engine's
    micro-USD revenue to 1e-9 relative.
    """
    doc = {
        "name": "toy",
        "horizon_weeks": 2,
        "w_dim": 0,
        "ran": {"area_km2": 6.0, "pop_density": 4000.0, "r_user0_mbps": 300.0},
        "llm": {"user_base": {"mode": "explicit", "explicit_users": 40_000}},
        "pricing": {"price0_usd_per_tok": 5e-5, "k_ratio": 1.3},
    }
    spec = validate_spec(doc, catalog=catalog)
    bundle = run_scenario(spec, catalog)
    assert 1 <= bundle.fleet_primary.g_total <= 9  # single-digit fleet

    from ranshare import economics, llm as llm_mod, ran as ran_mod

    primary = catalog.resolve(spec.platform_primary)
    rho_tok = economics.resolve_depreciation(spec.pricing, spec.llm.dens_annual)
    base_coeff = ran_mod.demand_coefficient(spec.ran, primary, spec.mix)
    g_total = bundle.fleet_primary.g_total

    for w in range(spec.horizon_weeks):
        ran_coeff = Fraction(base_coeff * ran_mod.growth_factor(spec.ran.growth_annual, w))
        llm_coeff = Fraction(llm_mod.demand_coefficient(spec.llm, spec.ran, w))
        cap_rate = Fraction(spec.llm.max_concurrency * llm_mod.gpu_throughput(spec.llm, w))
        price = Fraction(economics.token_price(spec.pricing, rho_tok, w))
        billed = Fraction(0)
        for h in range(168):
            r = math.ceil(ran_coeff * Fraction(spec.ran.profile[h]))
            served = min(r, g_total)
            free = g_total - served
            conc = llm_coeff * Fraction(spec.llm.profile[h])
            required = math.ceil(conc)
            a = min(required, free)
            assert a == bundle.allocation.g_llm[w, h]
            assert served == bundle.allocation.g_ran[w, h]
            billed += a * cap_rate
        exact_usd = price * billed * 3600
        engine_usd = Fraction(int(bundle.revenue_micro[w]), MICRO)
        assert exact_usd > 500  # micro rounding stays below the 1e-9 budget
        assert abs(engine_usd - exact_usd) / exact_usd < Fraction(1, 10**9)
