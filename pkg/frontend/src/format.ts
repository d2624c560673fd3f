/** Declared display rounding. Every number shown in the UI passes through
 * exactly one of these; no other arithmetic is applied to API values. */

export function fmtUsd(x: number): string {
  return "$" + x.toLocaleString("en-US", { minimumFractionDigits: 2, maximumFractionDigits: 2 });
}

export function fmtMultiple(x: number | null): string {
  if (x === null) return "∞×";
  return x.toFixed(2) + "×";
}

export function fmtBreakEven(week: number | null): string {
  if (week === null) return "never";
  if (week === 0) return "immediate";
  return `week ${week}`;
}

export function fmtDelta(x: number, unit: "usd" | "multiple"): string {
  const sign = x > 0 ? "+" : "";
  return unit === "usd" ? sign + fmtUsd(x) : sign + x.toFixed(2) + "×";
}
