/** Assemble result views from API bundles. Pure: bundle JSON in, HTML out.
 *
 * Every displayed number is an API value passed through the declared
 * formatting in format.ts; the client computes nothing else from scenario
 * parameters.
 */

import { groupedBarChart, lineChart, stackedAreaChart, type Series } from "./charts.js";
import { fmtBreakEven, fmtDelta, fmtMultiple, fmtUsd } from "./format.js";
import type { ResultBundle } from "./types.js";

export const COLORS = {
  ran: "#3566b8",
  llm: "#e8923a",
  idle: "#b9bfc9",
  fleet: "#20242b",
  investment: "#20242b",
  k: ["#3566b8", "#c23b3b", "#36883d", "#e8923a", "#7a4fb0", "#2a8c8c"],
  scenario: ["#3566b8", "#e8923a"],
};

const WEEK_TICKS = [0, 104, 208, 312, 416, 520];
const HOUR_TICKS = [0, 24, 48, 72, 96, 120, 144, 168];

function esc(s: string): string {
  return s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

function card(label: string, value: string, id: string): string {
  return (
    `<div class="card" data-card="${id}"><div class="card-label">${esc(label)}</div>` +
    `<div class="card-value">${esc(value)}</div></div>`
  );
}

/** Headline cards: marginal investment, break-even week, return multiple,
 * fleet sizes. Values come straight from the bundle's roi/fleets blocks. */
export function headlineCards(bundle: ResultBundle): string {
  const roi = bundle.roi;
  return (
    '<div class="cards">' +
    card("Marginal investment", fmtUsd(roi.investment_usd), "investment") +
    card("Break-even", fmtBreakEven(roi.break_even_week), "break-even") +
    card("Return multiple", fmtMultiple(roi.return_multiple), "multiple") +
    card(
      "Fleet",
      `${bundle.fleets.primary.g_total} vs ${bundle.fleets.baseline.g_total}`,
      "fleet",
    ) +
    "</div>"
  );
}

export function allocationChart(bundle: ResultBundle, yMax?: number): string {
  const h = bundle.allocation.hourly_week0;
  return stackedAreaChart(
    [
      { label: "radio", values: h.ran, color: COLORS.ran },
      { label: "inference", values: h.llm, color: COLORS.llm },
      { label: "idle", values: h.idle, color: COLORS.idle },
    ],
    {
      title: "Hourly allocation at deployment (week 0)",
      xLabel: "hour of week",
      yLabel: "GPUs",
      xTicks: HOUR_TICKS,
      yMax,
    },
  );
}

export function trendChart(bundle: ResultBundle, yMax?: number): string {
  const avg = bundle.allocation.weekly_avg;
  const fleet = bundle.allocation.g_total;
  return lineChart(
    [
      { label: "radio avg", values: avg.ran, color: COLORS.ran },
      { label: "inference avg", values: avg.llm, color: COLORS.llm },
    ],
    {
      title: "Weekly-average allocation",
      xLabel: "week",
      yLabel: "GPUs",
      xTicks: WEEK_TICKS,
      yMax,
      refLine: { value: fleet, label: `fleet ${fleet}`, attr: `data-fleet="${fleet}"` },
    },
  );
}

function kSeries(bundles: ResultBundle[], pick: (b: ResultBundle) => number[]): Series[] {
  return bundles.map((b, i) => ({
    label: b.pricing.column_label.replace("_", "."),
    values: pick(b),
    color: COLORS.k[i % COLORS.k.length],
  }));
}

export function revenueChart(bundles: ResultBundle[], yMax?: number): string {
  return lineChart(kSeries(bundles, (b) => b.series.weekly_revenue_usd), {
    title: "Weekly gross revenue by depreciation point",
    xLabel: "week",
    yLabel: "USD/week",
    xTicks: WEEK_TICKS,
    yMax,
  });
}

export function cumulativeChart(bundles: ResultBundle[], yMax?: number): string {
  const investment = bundles[0].roi.investment_usd;
  return lineChart(kSeries(bundles, (b) => b.series.cumulative_return_usd), {
    title: "Cumulative net return vs marginal investment",
    xLabel: "week",
    yLabel: "USD",
    xTicks: WEEK_TICKS,
    yMax,
    refLine: { value: investment, label: `investment ${fmtUsd(investment)}` },
  });
}

export interface RoiColumn {
  scenarioLabel: string;
  bundles: ResultBundle[]; // one per k, in sweep order
}

export function roiChart(columns: RoiColumn[], yMax?: number): string {
  const ks = columns[0].bundles.map((b) => b.pricing.column_label.replace("_", "."));
  const groups = ks.map((k, ki) => ({
    label: k,
    bars: columns.map((col, ci) => ({
      label: col.scenarioLabel,
      value: col.bundles[ki].roi.return_multiple ?? 0,
      color: COLORS.scenario[ci % COLORS.scenario.length],
    })),
  }));
  return groupedBarChart(groups, {
    title: "Return multiple by depreciation ratio",
    xLabel: "k",
    yLabel: "R / I",
    yMax,
    refLine: { value: 1, label: "break-even (1.0)" },
  });
}

/** One scenario's full result panel (cards + the five standard charts). */
export function resultPanel(bundle: ResultBundle, sweep: ResultBundle[],
                            scenarioLabel: string, yMaxes?: PanelScales): string {
  return (
    `<section class="results" data-digest="${bundle.config_digest}">` +
    `<div class="digest">scenario <strong>${esc(scenarioLabel)}</strong> · engine ${esc(bundle.engine.version)} · ` +
    `config digest <code>${bundle.config_digest.slice(0, 12)}</code></div>` +
    headlineCards(bundle) +
    `<div class="charts">` +
    allocationChart(bundle, yMaxes?.allocation) +
    trendChart(bundle, yMaxes?.trend) +
    revenueChart(sweep, yMaxes?.revenue) +
    cumulativeChart(sweep, yMaxes?.cumulative) +
    roiChart([{ scenarioLabel, bundles: sweep }], yMaxes?.roi) +
    `</div></section>`
  );
}

export interface PanelScales {
  allocation?: number;
  trend?: number;
  revenue?: number;
  cumulative?: number;
  roi?: number;
}

/** Shared y-scales so side-by-side panels render with synchronized axes. */
export function sharedScales(a: { bundle: ResultBundle; sweep: ResultBundle[] },
                             b: { bundle: ResultBundle; sweep: ResultBundle[] }): PanelScales {
  const niceTop = (x: number) => {
    if (x <= 0) return 1;
    const mag = Math.pow(10, Math.floor(Math.log10(x)));
    for (const m of [1, 2, 5, 10]) if (x <= m * mag) return m * mag;
    return 10 * mag;
  };
  const aTot = a.bundle.allocation.g_total;
  const bTot = b.bundle.allocation.g_total;
  const rev = (s: { sweep: ResultBundle[] }) =>
    Math.max(...s.sweep.flatMap((x) => x.series.weekly_revenue_usd));
  const cum = (s: { bundle: ResultBundle; sweep: ResultBundle[] }) =>
    Math.max(
      s.bundle.roi.investment_usd,
      ...s.sweep.flatMap((x) => x.series.cumulative_return_usd),
    );
  const roi = (s: { sweep: ResultBundle[] }) =>
    Math.max(1, ...s.sweep.map((x) => x.roi.return_multiple ?? 0));
  return {
    allocation: niceTop(Math.max(aTot, bTot)),
    trend: niceTop(Math.max(aTot, bTot)),
    revenue: niceTop(Math.max(rev(a), rev(b))),
    cumulative: niceTop(Math.max(cum(a), cum(b))),
    roi: niceTop(Math.max(roi(a), roi(b))),
  };
}

/** Side-by-side comparison with a delta card for I and R/I. */
export function compareView(a: { bundle: ResultBundle; sweep: ResultBundle[]; label: string },
                            b: { bundle: ResultBundle; sweep: ResultBundle[]; label: string }): string {
  const scales = sharedScales(a, b);
  const dInvestment = b.bundle.roi.investment_usd - a.bundle.roi.investment_usd;
  const aMult = a.bundle.roi.return_multiple;
  const bMult = b.bundle.roi.return_multiple;
  const dMult = aMult !== null && bMult !== null ? bMult - aMult : null;
  const delta =
    '<div class="cards delta-cards">' +
    card("Δ investment (B − A)", fmtDelta(dInvestment, "usd"), "delta-investment") +
    card("Δ return multiple (B − A)", dMult === null ? "n/a" : fmtDelta(dMult, "multiple"), "delta-multiple") +
    "</div>";
  return (
    delta +
    `<div class="compare-grid">` +
    `<div class="compare-col"><h3>A: ${esc(a.label)}</h3>${resultPanel(a.bundle, a.sweep, a.label, scales)}</div>` +
    `<div class="compare-col"><h3>B: ${esc(b.label)}</h3>${resultPanel(b.bundle, b.sweep, b.label, scales)}</div>` +
    `</div>`
  );
}
