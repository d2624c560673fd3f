"""Figure-ready CSV tables and the run manifest.

Every table is written deterministically: fixed column order, fixed float
formats, ``\n`` line endings. Monetary columns are formatted to 2 decimals;
full internal precision is preserved in ``metadata.json`` (whose
``generated_at`` timestamp is the only non-reproducible field).
"""

from __future__ import annotations

import csv
import json
from datetime import datetime, timezone
from pathlib import Path

from .economics import MICRO
from .engine import ENGINE_VERSION, ResultBundle
from .platforms import PlatformCatalog, dimension_for_throughput, load_catalog
from .profiles import HOURS_PER_WEEK

TCO_TARGET_MBPS = 10_000.0
TCO_YEARS = 10


def _unique_labels(bundles: list[ResultBundle]) -> list[str]:
    """Per-bundle column labels, disambiguated by density when needed."""
    dens = {b.spec.llm.dens_annual for b in bundles}
    labels = []
    for b in bundles:
        label = b.column_label
        if len(dens) > 1:
            label = f"dens{f'{b.spec.llm.dens_annual:g}'.replace('.', '_')}_{label}"
        labels.append(label)
    seen: dict[str, int] = {}
    out = []
    for label in labels:
        n = seen.get(label, 0)
        seen[label] = n + 1
        out.append(label if n == 0 else f"{label}_{n}")
    return out


def _write_csv(path: Path, header: list[str], rows) -> None:
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)


def export_tables(bundles: list[ResultBundle] | ResultBundle, out_dir: str | Path,
                  catalog: PlatformCatalog | None = None) -> list[Path]:
    """Write the standard table set for one or more scenario evaluations.

    Returns the list of files written. With an empty bundle list only the
    manifest is produced.
    """
    if isinstance(bundles, ResultBundle):
        bundles = [bundles]
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []

    labels = _unique_labels(bundles) if bundles else []

    for bundle in bundles:
        path = out_dir / f"gpu_usage_{bundle.spec.name}.csv"
        alloc = bundle.allocation
        _write_csv(
            path,
            ["hour", "ran", "llm", "idle"],
            [
                [h, int(alloc.g_ran[0, h]), int(alloc.g_llm[0, h]), int(alloc.g_idle[0, h])]
                for h in range(HOURS_PER_WEEK)
            ],
        )
        written.append(path)

    if bundles:
        weeks = bundles[0].spec.horizon_weeks
        # Allocation is independent of the pricing point, so one trend column
        # per distinct density value covers every bundle.
        trend_groups: list[ResultBundle] = []
        seen_dens = set()
        for b in bundles:
            if b.spec.llm.dens_annual not in seen_dens:
                seen_dens.add(b.spec.llm.dens_annual)
                trend_groups.append(b)
        header = ["week", "ran_avg"]
        if len(trend_groups) == 1:
            header.append("llm_avg")
        else:
            header.extend(
                f"llm_avg_dens{f'{b.spec.llm.dens_annual:g}'.replace('.', '_')}"
                for b in trend_groups
            )
        ran_avg = trend_groups[0].weekly_avg("ran")
        llm_avgs = [b.weekly_avg("llm") for b in trend_groups]
        rows = [
            [w, f"{ran_avg[w]:.6f}", *(f"{avg[w]:.6f}" for avg in llm_avgs)]
            for w in range(weeks)
        ]
        path = out_dir / "gpu_allocation_trend.csv"
        _write_csv(path, header, rows)
        written.append(path)

        path = out_dir / "llm_revenue.csv"
        _write_csv(
            path,
            ["week"] + [f"rev_{label}" for label in labels],
            [
                [w, *(f"{b.revenue_micro[w] / MICRO:.2f}" for b in bundles)]
                for w in range(weeks)
            ],
        )
        written.append(path)

        path = out_dir / "llm_cumulative.csv"
        _write_csv(
            path,
            ["week"] + [f"rev_{label}" for label in labels],
            [
                [w, *(f"{b.roi.cumulative_micro[w] / MICRO:.2f}" for b in bundles)]
                for w in range(weeks)
            ],
        )
        written.append(path)

        investment = bundles[0].roi.investment_micro / MICRO
        path = out_dir / "investment_ref.csv"
        _write_csv(path, ["week", "ref"], [[w, f"{investment:.2f}"] for w in range(weeks)])
        written.append(path)

        path = out_dir / "roi.csv"
        rows = []
        for b in bundles:
            k = b.spec.pricing.k_ratio
            multiple = b.roi.return_multiple
            rows.append(
                [
                    b.spec.name,
                    "" if k is None else f"{k:g}",
                    "inf" if multiple == float("inf") else f"{multiple:.2f}",
                ]
            )
        _write_csv(path, ["scenario", "k", "r_over_i"], rows)
        written.append(path)

        written.append(_export_tco(bundles[0], out_dir, catalog))

    manifest = {
        "engine": {
            "name": "ranshare",
            "version": ENGINE_VERSION,
            "backend": bundles[0].backend if bundles else None,
        },
        "generated_at": datetime.now(timezone.utc).isoformat(),
        "files": sorted(p.name for p in written),
        "bundles": [
            {
                "name": b.spec.name,
                "config_digest": b.digest,
                "scenario": b.spec.to_dict(),
                "fleets": {
                    "primary": {
                        "platform": b.fleet_primary.platform.name,
                        "g_total": b.fleet_primary.g_total,
                        "h_peak": b.fleet_primary.h_peak,
                        "capex_usd": b.fleet_primary.capex_usd,
                    },
                    "baseline": {
                        "platform": b.fleet_baseline.platform.name,
                        "g_total": b.fleet_baseline.g_total,
                        "h_peak": b.fleet_baseline.h_peak,
                        "capex_usd": b.fleet_baseline.capex_usd,
                    },
                },
                "pricing": {"rho_tok": b.rho_tok, "k_ratio": b.spec.pricing.k_ratio},
                "roi": {
                    "investment_micro": b.roi.investment_micro,
                    "cumulative_total_micro": int(b.roi.cumulative_micro[-1]),
                    "break_even_week": b.roi.break_even_week,
                    "return_multiple": None if b.roi.return_multiple == float("inf")
                    else b.roi.return_multiple,
                },
            }
            for b in bundles
        ],
    }
    path = out_dir / "metadata.json"
    path.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    written.append(path)
    return written


def _export_tco(bundle: ResultBundle, out_dir: Path, catalog: PlatformCatalog | None) -> Path:
    """Ten-year cost of a 10 Gbps deployment per platform and cell type, $/Gbps."""
    catalog = catalog if catalog is not None else load_catalog()
    spec = bundle.spec
    primary = catalog.resolve(spec.platform_primary)
    baseline = catalog.resolve(spec.platform_baseline)

    def cols(platform):
        out = {}
        for kind in ("micro", "macro", "mixed"):
            tco = dimension_for_throughput(
                platform, kind, TCO_TARGET_MBPS, spec.ran.se, spec.ran.overhead,
                TCO_YEARS, spec.ran.elec_usd_per_kwh, spec.ran.pue, spec.mix,
            )
            gbps = TCO_TARGET_MBPS / 1000.0
            out[kind] = (tco.capex_usd / gbps, tco.opex_usd / gbps)
        return out

    p_name = spec.platform_primary.lower()
    b_name = spec.platform_baseline.lower()
    p_cols, b_cols = cols(primary), cols(baseline)
    rows = []
    for kind, label in (("micro", "Micro"), ("macro", "Macro"), ("mixed", "Mixed")):
        rows.append(
            [
                label,
                f"{p_cols[kind][0]:.2f}",
                f"{p_cols[kind][1]:.2f}",
                f"{b_cols[kind][0]:.2f}",
                f"{b_cols[kind][1]:.2f}",
            ]
        )
    path = out_dir / "tco.csv"
    _write_csv(
        path,
        ["cell_type", f"{p_name}_capex", f"{p_name}_opex", f"{b_name}_capex", f"{b_name}_opex"],
        rows,
    )
    return path
