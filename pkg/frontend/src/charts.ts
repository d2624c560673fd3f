/** Pure SVG chart builders: array data in, SVG markup string out.
 *
 * No DOM access and no randomness, so a recorded API response renders to an
 * identical string offline (snapshot-testable). Coordinates are fixed to two
 * decimals to keep output stable.
 */

export interface Series {
  label: string;
  values: number[];
  color: string;
  dash?: string;
}

export interface ChartOptions {
  title: string;
  xLabel: string;
  yLabel: string;
  width?: number;
  height?: number;
  yMax?: number;
  refLine?: { value: number; label: string; attr?: string };
  xTicks?: number[];
}

const MARGIN = { top: 26, right: 12, bottom: 34, left: 56 };

function esc(s: string): string {
  return s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;").replace(/"/g, "&quot;");
}

function fx(x: number): string {
  return x.toFixed(2);
}

/** Round a positive magnitude up to a 1/2/5 "nice" boundary. */
function niceCeil(x: number): number {
  if (x <= 0) return 1;
  const mag = Math.pow(10, Math.floor(Math.log10(x)));
  for (const m of [1, 2, 5, 10]) {
    if (x <= m * mag) return m * mag;
  }
  return 10 * mag;
}

function tickLabel(v: number): string {
  if (Math.abs(v) >= 1_000_000) return (v / 1_000_000).toString() + "M";
  if (Math.abs(v) >= 1_000) return (v / 1_000).toString() + "k";
  return v.toString();
}

interface Frame {
  w: number;
  h: number;
  plotW: number;
  plotH: number;
  x: (i: number) => number;
  y: (v: number) => number;
  yTop: number;
}

function frame(width: number, height: number, xMax: number, yTop: number): Frame {
  const plotW = width - MARGIN.left - MARGIN.right;
  const plotH = height - MARGIN.top - MARGIN.bottom;
  return {
    w: width,
    h: height,
    plotW,
    plotH,
    x: (i) => MARGIN.left + (xMax === 0 ? 0 : (i / xMax) * plotW),
    y: (v) => MARGIN.top + plotH - (yTop === 0 ? 0 : (v / yTop) * plotH),
    yTop,
  };
}

function chrome(f: Frame, opts: ChartOptions): string {
  const parts: string[] = [];
  parts.push(`<text class="title" x="${fx(MARGIN.left)}" y="16">${esc(opts.title)}</text>`);
  const yTicks = 4;
  for (let t = 0; t <= yTicks; t++) {
    const v = (f.yTop * t) / yTicks;
    const y = f.y(v);
    parts.push(`<line class="grid" x1="${fx(MARGIN.left)}" y1="${fx(y)}" x2="${fx(MARGIN.left + f.plotW)}" y2="${fx(y)}"/>`);
    parts.push(`<text class="tick" x="${fx(MARGIN.left - 6)}" y="${fx(y + 3)}" text-anchor="end">${esc(tickLabel(v))}</text>`);
  }
  parts.push(`<text class="axis" x="${fx(MARGIN.left + f.plotW / 2)}" y="${fx(f.h - 8)}" text-anchor="middle">${esc(opts.xLabel)}</text>`);
  parts.push(`<text class="axis" transform="rotate(-90 12 ${fx(MARGIN.top + f.plotH / 2)})" x="12" y="${fx(MARGIN.top + f.plotH / 2)}" text-anchor="middle">${esc(opts.yLabel)}</text>`);
  return parts.join("");
}

function xAxisTicks(f: Frame, ticks: number[], xMax: number): string {
  return ticks
    .filter((t) => t <= xMax)
    .map(
      (t) =>
        `<text class="tick" x="${fx(f.x(t))}" y="${fx(MARGIN.top + f.plotH + 14)}" text-anchor="middle">${t}</text>`,
    )
    .join("");
}

function legend(f: Frame, entries: { label: string; color: string }[]): string {
  let x = MARGIN.left + 4;
  const parts: string[] = [];
  for (const e of entries) {
    parts.push(`<rect class="legend-swatch" x="${fx(x)}" y="${fx(f.h - 26)}" width="10" height="10" fill="${e.color}"/>`);
    parts.push(`<text class="legend" x="${fx(x + 14)}" y="${fx(f.h - 17)}">${esc(e.label)}</text>`);
    x += 14 + 7 * e.label.length + 16;
  }
  return parts.join("");
}

function svgOpen(f: Frame, cls: string): string {
  return `<svg class="chart ${cls}" viewBox="0 0 ${f.w} ${f.h}" role="img" xmlns="http://www.w3.org/2000/svg">`;
}

function refLine(f: Frame, ref: { value: number; label: string; attr?: string }): string {
  const y = f.y(Math.min(ref.value, f.yTop));
  const attr = ref.attr ?? "";
  return (
    `<line class="ref" ${attr} x1="${fx(MARGIN.left)}" y1="${fx(y)}" x2="${fx(MARGIN.left + f.plotW)}" y2="${fx(y)}"/>` +
    `<text class="ref-label" x="${fx(MARGIN.left + f.plotW - 4)}" y="${fx(y - 4)}" text-anchor="end">${esc(ref.label)}</text>`
  );
}

/** Stacked area chart; layers stack bottom-up in the order given. */
export function stackedAreaChart(layers: Series[], opts: ChartOptions): string {
  const width = opts.width ?? 620;
  const height = opts.height ?? 240;
  const n = layers[0]?.values.length ?? 0;
  const totals = Array.from({ length: n }, (_, i) =>
    layers.reduce((acc, l) => acc + l.values[i], 0),
  );
  const yTop = opts.yMax ?? niceCeil(Math.max(1, ...totals));
  const f = frame(width, height, Math.max(1, n - 1), yTop);
  const parts = [svgOpen(f, "stacked-area"), chrome(f, opts)];
  const base = new Array(n).fill(0);
  for (const layer of layers) {
    const upper = layer.values.map((v, i) => base[i] + v);
    const up = upper.map((v, i) => `${fx(f.x(i))},${fx(f.y(v))}`);
    const down = base.map((v, i) => `${fx(f.x(i))},${fx(f.y(v))}`).reverse();
    parts.push(`<polygon class="area" fill="${layer.color}" points="${up.join(" ")} ${down.join(" ")}"/>`);
    for (let i = 0; i < n; i++) base[i] = upper[i];
  }
  if (opts.xTicks) parts.push(xAxisTicks(f, opts.xTicks, Math.max(1, n - 1)));
  parts.push(legend(f, layers));
  parts.push("</svg>");
  return parts.join("");
}

/** Multi-series line chart with an optional horizontal reference line. */
export function lineChart(series: Series[], opts: ChartOptions): string {
  const width = opts.width ?? 620;
  const height = opts.height ?? 240;
  const n = Math.max(...series.map((s) => s.values.length), 0);
  const dataMax = Math.max(1e-9, ...series.flatMap((s) => s.values), opts.refLine?.value ?? 0);
  const yTop = opts.yMax ?? niceCeil(dataMax);
  const f = frame(width, height, Math.max(1, n - 1), yTop);
  const parts = [svgOpen(f, "line"), chrome(f, opts)];
  for (const s of series) {
    const pts = s.values.map((v, i) => `${fx(f.x(i))},${fx(f.y(Math.min(v, yTop)))}`);
    const dash = s.dash ? ` stroke-dasharray="${s.dash}"` : "";
    parts.push(`<polyline class="series" fill="none" stroke="${s.color}"${dash} points="${pts.join(" ")}"/>`);
  }
  if (opts.refLine) parts.push(refLine(f, opts.refLine));
  if (opts.xTicks) parts.push(xAxisTicks(f, opts.xTicks, Math.max(1, n - 1)));
  parts.push(legend(f, series));
  parts.push("</svg>");
  return parts.join("");
}

export interface BarGroup {
  label: string;
  bars: { label: string; value: number; color: string }[];
}

/** Grouped vertical bars (one group per k, one bar per scenario). */
export function groupedBarChart(groups: BarGroup[], opts: ChartOptions): string {
  const width = opts.width ?? 620;
  const height = opts.height ?? 240;
  const allValues = groups.flatMap((g) => g.bars.map((b) => b.value));
  const yTop = opts.yMax ?? niceCeil(Math.max(1, ...allValues, opts.refLine?.value ?? 0));
  const f = frame(width, height, 1, yTop);
  const parts = [svgOpen(f, "bars"), chrome(f, opts)];
  const groupW = f.plotW / Math.max(1, groups.length);
  groups.forEach((g, gi) => {
    const barW = (groupW * 0.7) / Math.max(1, g.bars.length);
    g.bars.forEach((b, bi) => {
      const x = MARGIN.left + gi * groupW + groupW * 0.15 + bi * barW;
      const clamped = Math.max(0, Math.min(b.value, yTop));
      const y = f.y(clamped);
      const h = MARGIN.top + f.plotH - y;
      parts.push(
        `<rect class="bar" data-group="${esc(g.label)}" data-bar="${esc(b.label)}" ` +
          `data-value="${String(b.value)}" fill="${b.color}" x="${fx(x)}" y="${fx(y)}" ` +
          `width="${fx(barW - 2)}" height="${fx(h)}"/>`,
      );
    });
    parts.push(
      `<text class="tick" x="${fx(MARGIN.left + gi * groupW + groupW / 2)}" y="${fx(MARGIN.top + f.plotH + 14)}" text-anchor="middle">${esc(g.label)}</text>`,
    );
  });
  if (opts.refLine) parts.push(refLine(f, opts.refLine));
  const seen = new Map<string, string>();
  for (const g of groups) for (const b of g.bars) if (!seen.has(b.label)) seen.set(b.label, b.color);
  parts.push(legend(f, [...seen.entries()].map(([label, color]) => ({ label, color }))));
  parts.push("</svg>");
  return parts.join("");
}
