"""Server platform catalog: baseband capacity, efficiency metrics, and TCO dimensioning.

A platform is a server model benchmarked in two cell configurations (macro and
micro). Capacity is measured in MHz of aggregate downlink baseband processing:
MIMO layers x cells x channel bandwidth. The catalog ships as an editable JSON
file so new platforms can be added without touching code.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

HOURS_PER_YEAR = 8760

# Dense urban deployments mix one macro cell site per three micro sites.
DEFAULT_MIX_MACRO = 1
DEFAULT_MIX_MICRO = 3


@dataclass(frozen=True)
class CellConfig:
    """One benchmark cell configuration of a platform."""

    dl_layers: int
    ul_layers: int
    num_cells: int
    bandwidth_mhz: float

    def __post_init__(self) -> None:
        if self.dl_layers < 1:
            raise ValueError("dl_layers must be >= 1")
        if self.num_cells < 1:
            raise ValueError("num_cells must be >= 1")
        if self.bandwidth_mhz <= 0:
            raise ValueError("bandwidth_mhz must be > 0")


@dataclass(frozen=True)
class PlatformSpec:
    """A server platform: cost, power, and its macro/micro baseband benchmarks."""

    name: str
    accelerator: str
    l1_stack: str
    cost_usd: float
    power_w: float
    macro_config: CellConfig
    micro_config: CellConfig

    def __post_init__(self) -> None:
        if self.cost_usd <= 0:
            raise ValueError("cost_usd must be > 0")
        if self.power_w <= 0:
            raise ValueError("power_w must be > 0")

    @property
    def b_macro(self) -> float:
        return baseband_capacity(self.macro_config)

    @property
    def b_micro(self) -> float:
        return baseband_capacity(self.micro_config)


@dataclass(frozen=True)
class DeploymentMix:
    """Macro-to-micro cell weighting used to average per-server capacity."""

    macro_weight: int = DEFAULT_MIX_MACRO
    micro_weight: int = DEFAULT_MIX_MICRO

    def __post_init__(self) -> None:
        if self.macro_weight < 0 or self.micro_weight < 0:
            raise ValueError("mix weights must be nonnegative")
        if self.macro_weight + self.micro_weight < 1:
            raise ValueError("mix must have at least one cell")


@dataclass(frozen=True)
class ResolvedPlatform:
    """A platform (or family average) reduced to what dimensioning needs.

    Resolving a single platform name yields its own cost/power/capacities.
    Resolving a Layer-1 stack name ("family") averages cost, power, and the
    per-configuration capacities over the member platforms, unweighted.
    """

    name: str
    cost_usd: float
    power_w: float
    b_macro: float
    b_micro: float
    members: tuple[str, ...]


@dataclass(frozen=True)
class TcoBreakdown:
    """Cost of meeting a throughput target with one platform configuration."""

    server_count: int
    capex_usd: float
    opex_usd: float
    tco_usd: float
    per_gbps_usd: float


def baseband_capacity(cfg: CellConfig) -> float:
    """Aggregate downlink baseband capacity in MHz: layers x cells x bandwidth."""
    return cfg.dl_layers * cfg.num_cells * cfg.bandwidth_mhz


def mixed_capacity(platform, mix: DeploymentMix = DeploymentMix()) -> float:
    """Deployment-weighted average capacity per server over the macro/micro mix.

    Accepts anything exposing ``b_macro``/``b_micro`` (PlatformSpec or
    ResolvedPlatform).
    """
    total = mix.macro_weight + mix.micro_weight
    return (mix.macro_weight * platform.b_macro + mix.micro_weight * platform.b_micro) / total


def efficiency_metrics(b_mhz: float, cost_usd: float, power_w: float) -> tuple[float, float]:
    """Capital efficiency (MHz/$) and power efficiency (MHz/W) of a platform."""
    if cost_usd <= 0:
        raise ValueError("cost_usd must be > 0")
    if power_w <= 0:
        raise ValueError("power_w must be > 0")
    return b_mhz / cost_usd, b_mhz / power_w


def net_throughput(b_mhz: float, se: float, overhead: float) -> float:
    """Net deliverable downlink throughput per server in Mbps.

    ``se`` is spectral efficiency in bit/s/Hz, ``overhead`` the L1/L2 signaling
    fraction lost; MHz x bit/s/Hz = Mbps.
    """
    if not 0 <= overhead < 1:
        raise ValueError("overhead must be in [0, 1)")
    if se <= 0:
        raise ValueError("spectral efficiency must be > 0")
    return b_mhz * se * (1 - overhead)


def config_capacity(platform, cfg_kind: str, mix: DeploymentMix = DeploymentMix()) -> float:
    """Capacity of one configuration kind: macro, micro, or the mixed average."""
    if cfg_kind == "macro":
        return platform.b_macro
    if cfg_kind == "micro":
        return platform.b_micro
    if cfg_kind == "mixed":
        return mixed_capacity(platform, mix)
    raise ValueError(f"unknown cfg_kind {cfg_kind!r}, expected macro|micro|mixed")


def dimension_for_throughput(
    platform,
    cfg_kind: str,
    target_mbps: float,
    se: float,
    overhead: float,
    years: int,
    elec_usd_per_kwh: float,
    pue: float,
    mix: DeploymentMix = DeploymentMix(),
) -> TcoBreakdown:
    """Size a fleet for an aggregate throughput target and cost it over ``years``.

    OpEx is electricity only: server TDP x PUE, priced per kWh over the full
    horizon. ``per_gbps_usd`` is a display normalization of the total.
    """
    if target_mbps <= 0:
        raise ValueError("target_mbps must be > 0")
    if years < 1:
        raise ValueError("years must be >= 1")
    per_server = net_throughput(config_capacity(platform, cfg_kind, mix), se, overhead)
    count = max(1, math.ceil(target_mbps / per_server))
    capex = count * platform.cost_usd
    opex = count * (platform.power_w / 1000.0) * pue * elec_usd_per_kwh * (HOURS_PER_YEAR * years)
    tco = capex + opex
    return TcoBreakdown(
        server_count=count,
        capex_usd=capex,
        opex_usd=opex,
        tco_usd=tco,
        per_gbps_usd=tco / (target_mbps / 1000.0),
    )


class PlatformCatalog:
    """The set of known platforms, resolvable by platform name or family (stack)."""

    def __init__(self, platforms: list[PlatformSpec]):
        if not platforms:
            raise ValueError("catalog must contain at least one platform")
        names = [p.name for p in platforms]
        if len(set(names)) != len(names):
            raise ValueError("duplicate platform names in catalog")
        self.platforms = list(platforms)

    def families(self) -> dict[str, list[PlatformSpec]]:
        out: dict[str, list[PlatformSpec]] = {}
        for p in self.platforms:
            out.setdefault(p.l1_stack, []).append(p)
        return out

    def resolve(self, name: str) -> ResolvedPlatform:
        """Resolve a platform or family name to dimensioning inputs.

        Family resolution takes the unweighted mean of member costs, powers,
        and per-configuration capacities.
        """
        for p in self.platforms:
            if p.name == name:
                return ResolvedPlatform(
                    name=p.name,
                    cost_usd=p.cost_usd,
                    power_w=p.power_w,
                    b_macro=p.b_macro,
                    b_micro=p.b_micro,
                    members=(p.name,),
                )
        members = self.families().get(name)
        if not members:
            known = [p.name for p in self.platforms] + sorted(self.families())
            raise KeyError(f"unknown platform {name!r}; known: {', '.join(known)}")
        n = len(members)
        return ResolvedPlatform(
            name=name,
            cost_usd=sum(p.cost_usd for p in members) / n,
            power_w=sum(p.power_w for p in members) / n,
            b_macro=sum(p.b_macro for p in members) / n,
            b_micro=sum(p.b_micro for p in members) / n,
            members=tuple(p.name for p in members),
        )

    def table_rows(self, mix: DeploymentMix = DeploymentMix()) -> list[dict]:
        """Per-configuration rows plus one mixed-average row per family.

        Reproduces the published benchmark table: each platform contributes a
        micro and a macro row; each family contributes a mixed row at the
        family-mean cost and power.
        """
        rows = []
        for p in self.platforms:
            for kind in ("micro", "macro"):
                b = config_capacity(p, kind)
                eta_c, eta_o = efficiency_metrics(b, p.cost_usd, p.power_w)
                rows.append(
                    {
                        "platform": p.name,
                        "accelerator": p.accelerator,
                        "l1_stack": p.l1_stack,
                        "config": kind,
                        "cost_usd": p.cost_usd,
                        "power_w": p.power_w,
                        "b_mhz": b,
                        "eta_c_mhz_per_usd": eta_c,
                        "eta_o_mhz_per_w": eta_o,
                    }
                )
        for family in sorted(self.families()):
            r = self.resolve(family)
            b = mixed_capacity(r, mix)
            eta_c, eta_o = efficiency_metrics(b, r.cost_usd, r.power_w)
            rows.append(
                {
                    "platform": family,
                    "accelerator": "--",
                    "l1_stack": family,
                    "config": "mixed",
                    "cost_usd": r.cost_usd,
                    "power_w": r.power_w,
                    "b_mhz": b,
                    "eta_c_mhz_per_usd": eta_c,
                    "eta_o_mhz_per_w": eta_o,
                }
            )
        return rows


def _parse_catalog(doc: dict) -> PlatformCatalog:
    if not isinstance(doc, dict) or "platforms" not in doc:
        raise ValueError("catalog document must contain a 'platforms' list")
    specs = []
    for i, rec in enumerate(doc["platforms"]):
        try:
            specs.append(
                PlatformSpec(
                    name=rec["name"],
                    accelerator=rec["accelerator"],
                    l1_stack=rec["l1_stack"],
                    cost_usd=float(rec["cost_usd"]),
                    power_w=float(rec["power_w"]),
                    macro_config=CellConfig(**rec["macro_config"]),
                    micro_config=CellConfig(**rec["micro_config"]),
                )
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"catalog record {i}: {exc}") from exc
    return PlatformCatalog(specs)


def load_catalog(path: str | Path | None = None) -> PlatformCatalog:
    """Load the platform catalog from ``path`` or the bundled default."""
    if path is None:
        text = resources.files("ranshare.data").joinpath("platforms.json").read_text()
    else:
        text = Path(path).read_text()
    return _parse_catalog(json.loads(text))
