"""Bundled scenario presets.

``milan_s1``/``milan_s2`` describe a dense-urban deployment of roughly 20 km^2
with the two standard dimensioning strategies: size the cluster for launch
demand (s1, flat radio demand) or for end-of-horizon demand (s2, radio demand
compounding 20%/year). Every omitted config field defaults to the values in
``milan_s1``.
"""

from __future__ import annotations

import copy

_MILAN_BASE = {
    "name": "milan_s1",
    "horizon_weeks": 520,
    "w_dim": 0,
    "platform_primary": "Aerial",
    "platform_baseline": "FlexRAN",
    "mix": {"macro_weight": 1, "micro_weight": 3},
    "ran": {
        "pop_density": 7500.0,
        "area_km2": 20.0,
        "penetration": 0.8,
        "busy_hour_factor": 0.1,
        "r_user0_mbps": 300.0,
        "growth_annual": 1.0,
        "se": 9.0,
        "overhead": 0.2,
        "pue": 1.5,
        "elec_usd_per_kwh": 0.2,
        "profile": "ran_default",
    },
    "llm": {
        "t_gpu0": 37.0,
        "dens_annual": 12.87,
        "max_concurrency": 23.5,
        "tokens_per_request": 969.17,
        "q0": 14.4,
        "demand_growth_annual": 16.0,
        "ai_adoption": 0.5,
        "profile": "llm_default",
        "user_base": {"mode": "area_product", "explicit_users": 0},
    },
    # Depreciation defaults to the neutral point k=1 (price erosion exactly
    # offset by density gains); set tok_depreciation_annual to pin the market
    # rate directly instead.
    "pricing": {
        "price0_usd_per_tok": 0.88e-6,
        "tok_depreciation_annual": None,
        "k_ratio": 1.0,
        "k_interpretation": "exponent",
        "billing_mode": "capacity",
        "opex_attribution": "llm_energy",
    },
    "sweep": {"k": [1.0, 1.25, 1.5, 2.0], "dens_annual": []},
}


def _variant(**overrides) -> dict:
    doc = copy.deepcopy(_MILAN_BASE)
    for path, value in overrides.items():
        keys = path.split(".")
        node = doc
        for k in keys[:-1]:
            node = node[k]
        node[keys[-1]] = value
    return doc


PRESETS: dict[str, dict] = {
    "milan_s1": _variant(),
    "milan_s2": _variant(**{"name": "milan_s2", "w_dim": "end", "ran.growth_annual": 1.2}),
}


def default_config() -> dict:
    """The base document every scenario config is merged onto."""
    return copy.deepcopy(_MILAN_BASE)


def preset(name: str) -> dict:
    if name not in PRESETS:
        raise KeyError(f"unknown preset {name!r}; available: {sorted(PRESETS)}")
    return copy.deepcopy(PRESETS[name])
