"""Scenario configuration, validation, and the evaluation pipeline.

A scenario document is a nested key-value mapping; missing fields are filled
from the bundled defaults (the ``milan_s1`` preset), unknown fields are
rejected, and every violation is reported with its field path. Evaluation is
fully deterministic: a resolved spec hashes to a config digest, and identical
digests produce identical results.
"""

from __future__ import annotations

import dataclasses
import hashlib
import json
import warnings
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import economics, kernels, llm as llm_mod, ran as ran_mod
from .economics import AllocationSeries, PricingParams, RoiReport, usd_to_micro
from .errors import ConfigError
from .llm import LlmParams, UserBase
from .platforms import DeploymentMix, PlatformCatalog, load_catalog
from .presets import default_config, preset
from .profiles import (
    DAILY_FRACTION,
    HOURS_PER_DAY,
    HOURS_PER_WEEK,
    PEAK_NORMALIZED,
    WeeklyProfile,
    builtin_profile,
    load_profile,
    normalize,
)
from .ran import FleetPlan, RanParams

ENGINE_VERSION = "0.1.0"


@dataclass(frozen=True)
class ScenarioSpec:
    """A fully resolved, validated scenario."""

    name: str
    horizon_weeks: int
    w_dim: int
    platform_primary: str
    platform_baseline: str
    mix: DeploymentMix
    ran: RanParams
    llm: LlmParams
    pricing: PricingParams
    sweep_k: tuple[float, ...] = ()
    sweep_dens: tuple[float, ...] = ()

    def to_dict(self) -> dict:
        """Canonical plain-data form; the config digest hashes exactly this."""
        return {
            "name": self.name,
            "horizon_weeks": self.horizon_weeks,
            "w_dim": self.w_dim,
            "platform_primary": self.platform_primary,
            "platform_baseline": self.platform_baseline,
            "mix": {"macro_weight": self.mix.macro_weight, "micro_weight": self.mix.micro_weight},
            "ran": {
                "pop_density": self.ran.pop_density,
                "area_km2": self.ran.area_km2,
                "penetration": self.ran.penetration,
                "busy_hour_factor": self.ran.busy_hour_factor,
                "r_user0_mbps": self.ran.r_user0_mbps,
                "growth_annual": self.ran.growth_annual,
                "se": self.ran.se,
                "overhead": self.ran.overhead,
                "pue": self.ran.pue,
                "elec_usd_per_kwh": self.ran.elec_usd_per_kwh,
                "profile": [float(v) for v in self.ran.profile.values],
            },
            "llm": {
                "t_gpu0": self.llm.t_gpu0,
                "dens_annual": self.llm.dens_annual,
                "max_concurrency": self.llm.max_concurrency,
                "tokens_per_request": self.llm.tokens_per_request,
                "q0": self.llm.q0,
                "demand_growth_annual": self.llm.demand_growth_annual,
                "ai_adoption": self.llm.ai_adoption,
                "profile": [float(v) for v in self.llm.profile.values],
                "user_base": {
                    "mode": self.llm.user_base.mode,
                    "explicit_users": self.llm.user_base.explicit_users,
                },
            },
            "pricing": {
                "price0_usd_per_tok": self.pricing.price0_usd_per_tok,
                "tok_depreciation_annual": self.pricing.tok_depreciation_annual,
                "k_ratio": self.pricing.k_ratio,
                "k_interpretation": self.pricing.k_interpretation,
                "billing_mode": self.pricing.billing_mode,
                "opex_attribution": self.pricing.opex_attribution,
            },
            "sweep": {"k": list(self.sweep_k), "dens_annual": list(self.sweep_dens)},
        }

    def config_digest(self) -> str:
        canon = json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(canon.encode()).hexdigest()


@dataclass(frozen=True)
class ResultBundle:
    """Everything one scenario evaluation produced."""

    spec: ScenarioSpec
    digest: str
    fleet_primary: FleetPlan
    fleet_baseline: FleetPlan
    allocation: AllocationSeries
    revenue_micro: np.ndarray      # (W,) int64, gross weekly revenue
    ran_opex_micro: np.ndarray     # (W,) int64, radio energy cost, primary fleet
    llm_energy_micro: np.ndarray   # (W,) int64, inference energy cost
    roi: RoiReport
    rho_tok: float
    column_label: str              # identifies the depreciation point in exports
    backend: str

    def weekly_avg(self, which: str) -> np.ndarray:
        arr = getattr(self.allocation, f"g_{which}")
        return arr.mean(axis=1)

    def to_api_dict(self) -> dict:
        alloc = self.allocation
        return {
            "config_digest": self.digest,
            "engine": {"name": "ranshare", "version": ENGINE_VERSION, "backend": self.backend},
            "scenario": self.spec.to_dict(),
            "fleets": {
                "primary": _fleet_dict(self.fleet_primary),
                "baseline": _fleet_dict(self.fleet_baseline),
            },
            "pricing": {"rho_tok": self.rho_tok, "column_label": self.column_label},
            "allocation": {
                "g_total": alloc.g_total,
                "hourly_week0": {
                    "ran": alloc.g_ran[0].tolist(),
                    "llm": alloc.g_llm[0].tolist(),
                    "idle": alloc.g_idle[0].tolist(),
                },
                "weekly_avg": {
                    "ran": alloc.g_ran.mean(axis=1).tolist(),
                    "llm": alloc.g_llm.mean(axis=1).tolist(),
                    "idle": alloc.g_idle.mean(axis=1).tolist(),
                },
                "unmet_ran_hours": int(alloc.unmet_ran.sum()),
            },
            "series": {
                "weekly_revenue_usd": (self.revenue_micro / economics.MICRO).tolist(),
                "weekly_net_return_usd": self.roi.weekly_net_return_usd.tolist(),
                "cumulative_return_usd": self.roi.cumulative_return_usd.tolist(),
                "ran_opex_usd": (self.ran_opex_micro / economics.MICRO).tolist(),
                "llm_energy_usd": (self.llm_energy_micro / economics.MICRO).tolist(),
            },
            "roi": {
                "investment_usd": self.roi.investment_usd,
                "break_even_week": self.roi.break_even_week,
                "return_multiple": (
                    None if self.roi.return_multiple == float("inf") else self.roi.return_multiple
                ),
                "cumulative_total_usd": float(self.roi.cumulative_return_usd[-1]),
            },
        }


def _fleet_dict(fleet: FleetPlan) -> dict:
    return {
        "platform": fleet.platform.name,
        "g_total": fleet.g_total,
        "w_dim": fleet.w_dim,
        "h_peak": fleet.h_peak,
        "capex_usd": fleet.capex_usd,
    }


class _Validator:
    def __init__(self) -> None:
        self.violations: list[tuple[str, str]] = []

    def err(self, path: str, msg: str) -> None:
        self.violations.append((path, msg))

    @staticmethod
    def _join(path: str, key: str) -> str:
        return f"{path}.{key}" if path else key

    def section(self, doc: dict, key: str, path: str) -> dict:
        v = doc.get(key)
        if not isinstance(v, dict):
            self.err(path, "must be a mapping")
            return {}
        return v

    def number(self, sec: dict, key: str, path: str, *, lo=None, hi=None,
               lo_open=False, hi_open=False, integer=False):
        v = sec.get(key)
        if isinstance(v, bool) or not isinstance(v, (int, float)):
            self.err(self._join(path, key), "must be a number")
            return None
        if integer and int(v) != v:
            self.err(self._join(path, key), "must be an integer")
            return None
        x = int(v) if integer else float(v)
        if lo is not None and (x <= lo if lo_open else x < lo):
            self.err(self._join(path, key), _range_msg(lo, hi, lo_open, hi_open))
            return None
        if hi is not None and (x >= hi if hi_open else x > hi):
            self.err(self._join(path, key), _range_msg(lo, hi, lo_open, hi_open))
            return None
        return x

    def choice(self, sec: dict, key: str, path: str, options: tuple):
        v = sec.get(key)
        if v not in options:
            self.err(self._join(path, key), f"must be one of {list(options)}")
            return None
        return v

    def unknown(self, sec: dict, known: tuple, path: str) -> None:
        for key in sec:
            if key not in known:
                self.err(self._join(path, key), "unknown field")


def _range_msg(lo, hi, lo_open, hi_open) -> str:
    left = "(" if lo_open else "["
    right = ")" if hi_open else "]"
    lo_s = "-inf" if lo is None else f"{lo:g}"
    hi_s = "inf" if hi is None else f"{hi:g}"
    return f"must be in {left}{lo_s}, {hi_s}{right}"


def _merge(base: dict, overlay: dict) -> dict:
    out = dict(base)
    for k, v in overlay.items():
        if isinstance(v, dict) and isinstance(out.get(k), dict):
            out[k] = _merge(out[k], v)
        else:
            out[k] = v
    return out


def _resolve_profile(entry, kind: str, path: str, v: _Validator) -> Optional[WeeklyProfile]:
    try:
        if isinstance(entry, str):
            if entry in ("ran_default", "llm_default"):
                prof = builtin_profile(entry)
                if prof.kind != kind:
                    return normalize(prof.values, kind)
                return prof
            return load_profile(entry, kind)
        if isinstance(entry, (list, tuple)):
            values = [float(x) for x in entry]
            if len(values) == HOURS_PER_DAY:
                values = values * 7
            if len(values) != HOURS_PER_WEEK:
                raise ValueError(f"expected 24 or {HOURS_PER_WEEK} values, got {len(values)}")
            return normalize(values, kind)
        raise ValueError("must be a builtin name, a file path, or a list of values")
    except (ValueError, OSError) as exc:
        v.err(path, str(exc))
        return None


def validate_spec(raw: dict, preset_name: str | None = None,
                  catalog: PlatformCatalog | None = None) -> ScenarioSpec:
    """Validate a raw scenario document into a ScenarioSpec.

    Missing fields default from the bundled Milan preset (or ``preset_name``
    when given); unknown fields and range violations raise ConfigError listing
    every offending field path.
    """
    if not isinstance(raw, dict):
        raise ConfigError([("", "scenario document must be a mapping")])
    base = preset(preset_name) if preset_name else default_config()
    doc = _merge(base, raw)
    # The two depreciation fields are mutually exclusive; a user setting one
    # of them supersedes the preset's choice of the other.
    raw_pricing = raw.get("pricing") or {}
    if isinstance(raw_pricing, dict):
        if "tok_depreciation_annual" in raw_pricing and "k_ratio" not in raw_pricing:
            if raw_pricing["tok_depreciation_annual"] is not None:
                doc["pricing"]["k_ratio"] = None
        if "k_ratio" in raw_pricing and "tok_depreciation_annual" not in raw_pricing:
            if raw_pricing["k_ratio"] is not None:
                doc["pricing"]["tok_depreciation_annual"] = None
    catalog = catalog if catalog is not None else load_catalog()
    v = _Validator()

    v.unknown(doc, ("name", "horizon_weeks", "w_dim", "platform_primary", "platform_baseline",
                    "mix", "ran", "llm", "pricing", "sweep"), "")

    name = doc.get("name")
    if not isinstance(name, str) or not name:
        v.err("name", "must be a nonempty string")
        name = "scenario"

    horizon = v.number(doc, "horizon_weeks", "", lo=1, integer=True) or 1

    w_dim_raw = doc.get("w_dim")
    if w_dim_raw == "end":
        w_dim = horizon
    elif isinstance(w_dim_raw, int) and not isinstance(w_dim_raw, bool):
        w_dim = w_dim_raw
        if not 0 <= w_dim <= horizon:
            v.err("w_dim", f"must be in [0, horizon_weeks={horizon}] or 'end'")
            w_dim = 0
    else:
        v.err("w_dim", "must be an integer week or 'end'")
        w_dim = 0

    platforms = {}
    for key in ("platform_primary", "platform_baseline"):
        pname = doc.get(key)
        if not isinstance(pname, str):
            v.err(key, "must be a platform or family name")
            continue
        try:
            catalog.resolve(pname)
            platforms[key] = pname
        except KeyError as exc:
            v.err(key, str(exc.args[0]))

    mix_sec = v.section(doc, "mix", "mix")
    v.unknown(mix_sec, ("macro_weight", "micro_weight"), "mix")
    macro_w = v.number(mix_sec, "macro_weight", "mix", lo=0, integer=True)
    micro_w = v.number(mix_sec, "micro_weight", "mix", lo=0, integer=True)
    mix = None
    if macro_w is not None and micro_w is not None:
        if macro_w + micro_w < 1:
            v.err("mix", "must have at least one cell")
        else:
            mix = DeploymentMix(macro_weight=macro_w, micro_weight=micro_w)

    ran_sec = v.section(doc, "ran", "ran")
    v.unknown(ran_sec, ("pop_density", "area_km2", "penetration", "busy_hour_factor",
                        "r_user0_mbps", "growth_annual", "se", "overhead", "pue",
                        "elec_usd_per_kwh", "profile"), "ran")
    ran_vals = {
        "pop_density": v.number(ran_sec, "pop_density", "ran", lo=0, lo_open=True),
        "area_km2": v.number(ran_sec, "area_km2", "ran", lo=0, lo_open=True),
        "penetration": v.number(ran_sec, "penetration", "ran", lo=0, hi=1, lo_open=True),
        "busy_hour_factor": v.number(ran_sec, "busy_hour_factor", "ran", lo=0, hi=1, lo_open=True),
        "r_user0_mbps": v.number(ran_sec, "r_user0_mbps", "ran", lo=0),
        "growth_annual": v.number(ran_sec, "growth_annual", "ran", lo=0, lo_open=True),
        "se": v.number(ran_sec, "se", "ran", lo=0, lo_open=True),
        "overhead": v.number(ran_sec, "overhead", "ran", lo=0, hi=1, hi_open=True),
        "pue": v.number(ran_sec, "pue", "ran", lo=0, lo_open=True),
        "elec_usd_per_kwh": v.number(ran_sec, "elec_usd_per_kwh", "ran", lo=0, lo_open=True),
    }
    ran_profile = _resolve_profile(ran_sec.get("profile"), PEAK_NORMALIZED, "ran.profile", v)

    llm_sec = v.section(doc, "llm", "llm")
    v.unknown(llm_sec, ("t_gpu0", "dens_annual", "max_concurrency", "tokens_per_request",
                        "q0", "demand_growth_annual", "ai_adoption", "profile", "user_base"), "llm")
    llm_vals = {
        "t_gpu0": v.number(llm_sec, "t_gpu0", "llm", lo=0, lo_open=True),
        "dens_annual": v.number(llm_sec, "dens_annual", "llm", lo=0, lo_open=True),
        "max_concurrency": v.number(llm_sec, "max_concurrency", "llm", lo=0, lo_open=True),
        "tokens_per_request": v.number(llm_sec, "tokens_per_request", "llm", lo=0, lo_open=True),
        "q0": v.number(llm_sec, "q0", "llm", lo=0),
        "demand_growth_annual": v.number(llm_sec, "demand_growth_annual", "llm", lo=0, lo_open=True),
        "ai_adoption": v.number(llm_sec, "ai_adoption", "llm", lo=0, hi=1, lo_open=True),
    }
    llm_profile = _resolve_profile(llm_sec.get("profile"), DAILY_FRACTION, "llm.profile", v)

    ub_sec = v.section(llm_sec, "user_base", "llm.user_base")
    v.unknown(ub_sec, ("mode", "explicit_users"), "llm.user_base")
    ub_mode = v.choice(ub_sec, "mode", "llm.user_base", ("area_product", "explicit"))
    ub_users = v.number(ub_sec, "explicit_users", "llm.user_base", lo=0, integer=True)
    user_base = None
    if ub_mode is not None and ub_users is not None:
        if ub_mode == "explicit" and ub_users <= 0:
            v.err("llm.user_base.explicit_users", "must be > 0 in explicit mode")
        else:
            user_base = UserBase(mode=ub_mode, explicit_users=ub_users)

    pr_sec = v.section(doc, "pricing", "pricing")
    v.unknown(pr_sec, ("price0_usd_per_tok", "tok_depreciation_annual", "k_ratio",
                       "k_interpretation", "billing_mode", "opex_attribution"), "pricing")
    price0 = v.number(pr_sec, "price0_usd_per_tok", "pricing", lo=0, lo_open=True)
    tok_dep = pr_sec.get("tok_depreciation_annual")
    k_ratio = pr_sec.get("k_ratio")
    if tok_dep is not None:
        tok_dep = v.number(pr_sec, "tok_depreciation_annual", "pricing", lo=0, hi=1, lo_open=True)
    if k_ratio is not None:
        k_ratio = v.number(pr_sec, "k_ratio", "pricing", lo=0)
    if (tok_dep is None) == (k_ratio is None):
        v.err("pricing", "exactly one of tok_depreciation_annual or k_ratio must be set")
    k_interp = v.choice(pr_sec, "k_interpretation", "pricing", ("exponent", "ratio"))
    billing = v.choice(pr_sec, "billing_mode", "pricing", ("capacity", "demand"))
    attribution = v.choice(pr_sec, "opex_attribution", "pricing", ("llm_energy", "ran_opex", "both"))

    sweep_sec = doc.get("sweep")
    sweep_k: tuple[float, ...] = ()
    sweep_dens: tuple[float, ...] = ()
    if sweep_sec is not None:
        if not isinstance(sweep_sec, dict):
            v.err("sweep", "must be a mapping or null")
        else:
            v.unknown(sweep_sec, ("k", "dens_annual"), "sweep")
            for key, lo_open in (("k", False), ("dens_annual", True)):
                vals = sweep_sec.get(key, [])
                if not isinstance(vals, (list, tuple)):
                    v.err(f"sweep.{key}", "must be a list of numbers")
                    continue
                ok = []
                for i, x in enumerate(vals):
                    if isinstance(x, bool) or not isinstance(x, (int, float)) or x < 0 or (lo_open and x <= 0):
                        v.err(f"sweep.{key}[{i}]", "must be a positive number")
                    else:
                        ok.append(float(x))
                if key == "k":
                    sweep_k = tuple(ok)
                else:
                    sweep_dens = tuple(ok)

    if v.violations:
        raise ConfigError(v.violations)

    try:
        ran_params = RanParams(profile=ran_profile, **ran_vals)
    except ValueError as exc:
        raise ConfigError([("ran", str(exc))]) from exc
    try:
        llm_params = LlmParams(profile=llm_profile, user_base=user_base, **llm_vals)
    except ValueError as exc:
        raise ConfigError([("llm", str(exc))]) from exc
    try:
        pricing = PricingParams(
            price0_usd_per_tok=price0,
            tok_depreciation_annual=tok_dep,
            k_ratio=k_ratio,
            k_interpretation=k_interp,
            billing_mode=billing,
            opex_attribution=attribution,
        )
    except ValueError as exc:
        raise ConfigError([("pricing", str(exc))]) from exc

    return ScenarioSpec(
        name=name,
        horizon_weeks=horizon,
        w_dim=w_dim,
        platform_primary=platforms["platform_primary"],
        platform_baseline=platforms["platform_baseline"],
        mix=mix,
        ran=ran_params,
        llm=llm_params,
        pricing=pricing,
        sweep_k=sweep_k,
        sweep_dens=sweep_dens,
    )


def run_scenario(spec: ScenarioSpec, catalog: PlatformCatalog | None = None,
                 backend: str | None = None) -> ResultBundle:
    """Evaluate one scenario over the full (week, hour) grid."""
    catalog = catalog if catalog is not None else load_catalog()
    primary = catalog.resolve(spec.platform_primary)
    baseline = catalog.resolve(spec.platform_baseline)

    fleet_primary = ran_mod.dimension_cluster(spec.ran, primary, spec.mix, spec.w_dim)
    fleet_baseline = ran_mod.dimension_cluster(spec.ran, baseline, spec.mix, spec.w_dim)

    rho_tok = economics.resolve_depreciation(spec.pricing, spec.llm.dens_annual)
    weeks = spec.horizon_weeks

    base_coeff = ran_mod.demand_coefficient(spec.ran, primary, spec.mix)
    week_ran_coeff = np.array(
        [base_coeff * ran_mod.growth_factor(spec.ran.growth_annual, w) for w in range(weeks)]
    )
    llm_coeff = np.array(
        [llm_mod.demand_coefficient(spec.llm, spec.ran, w) for w in range(weeks)]
    )
    cap_rate = np.array(
        [spec.llm.max_concurrency * llm_mod.gpu_throughput(spec.llm, w) for w in range(weeks)]
    )
    price = np.array(
        [economics.token_price(spec.pricing, rho_tok, w) for w in range(weeks)]
    )
    energy_rate = (primary.power_w * spec.ran.pue / 1000.0) * spec.ran.elec_usd_per_kwh

    resolved_backend = kernels.active_backend(backend)
    grid = kernels.evaluate_grid(
        spec.ran.profile.values,
        spec.llm.profile.values,
        week_ran_coeff,
        llm_coeff,
        cap_rate,
        price,
        fleet_primary.g_total,
        spec.pricing.billing_mode == economics.DEMAND,
        energy_rate,
        backend=resolved_backend,
    )

    if grid.unmet_ran.any():
        cells = int((grid.unmet_ran > 0).sum())
        warnings.warn(
            f"{spec.name}: radio demand exceeds the fleet in {cells} grid cell(s) "
            f"(dimensioned at week {spec.w_dim}); unmet demand is recorded in the "
            "allocation series",
            stacklevel=2,
        )

    free = fleet_primary.g_total - grid.ran_served
    allocation = AllocationSeries(
        g_ran=grid.ran_served,
        g_llm=grid.llm_alloc,
        g_idle=free - grid.llm_alloc,
        g_required=grid.llm_required,
        unmet_ran=grid.unmet_ran,
        g_total=fleet_primary.g_total,
    )

    attribution = spec.pricing.opex_attribution
    if attribution == economics.ATTR_LLM_ENERGY:
        opex_attr = grid.llm_energy_micro
    elif attribution == economics.ATTR_RAN_OPEX:
        opex_attr = grid.ran_opex_micro
    else:
        opex_attr = grid.llm_energy_micro + grid.ran_opex_micro
    net_micro = grid.revenue_micro - opex_attr

    investment_usd = economics.marginal_investment(fleet_primary, fleet_baseline)
    roi = economics.break_even_and_roi(net_micro, usd_to_micro(investment_usd))

    if spec.pricing.k_ratio is not None:
        label = "k" + _fmt_num(spec.pricing.k_ratio)
    else:
        label = "tok" + _fmt_num(rho_tok)

    return ResultBundle(
        spec=spec,
        digest=spec.config_digest(),
        fleet_primary=fleet_primary,
        fleet_baseline=fleet_baseline,
        allocation=allocation,
        revenue_micro=grid.revenue_micro,
        ran_opex_micro=grid.ran_opex_micro,
        llm_energy_micro=grid.llm_energy_micro,
        roi=roi,
        rho_tok=rho_tok,
        column_label=label,
        backend=resolved_backend,
    )


def sweep_points(spec: ScenarioSpec) -> list[ScenarioSpec]:
    """Expand a spec's sweep lists into one resolved spec per point."""
    if not spec.sweep_k and not spec.sweep_dens:
        raise ConfigError([("sweep", "sweep requires at least one k or dens_annual value")])
    dens_list: list[float | None] = list(spec.sweep_dens) or [None]
    k_list: list[float | None] = list(spec.sweep_k) or [None]
    points = []
    for dens in dens_list:
        for k in k_list:
            child = spec
            suffix = ""
            if dens is not None:
                child = dataclasses.replace(child, llm=dataclasses.replace(child.llm, dens_annual=dens))
                suffix += f"_dens{_fmt_num(dens)}"
            if k is not None:
                child = dataclasses.replace(
                    child,
                    pricing=dataclasses.replace(child.pricing, k_ratio=k, tok_depreciation_annual=None),
                )
                suffix += f"_k{_fmt_num(k)}"
            child = dataclasses.replace(child, name=spec.name + suffix, sweep_k=(), sweep_dens=())
            points.append(child)
    return points


def run_sweep(spec: ScenarioSpec, catalog: PlatformCatalog | None = None,
              backend: str | None = None) -> list[ResultBundle]:
    """Evaluate every sweep point independently, in config order."""
    catalog = catalog if catalog is not None else load_catalog()
    return [run_scenario(point, catalog, backend) for point in sweep_points(spec)]


def _fmt_num(x: float) -> str:
    return f"{x:g}".replace(".", "_")
