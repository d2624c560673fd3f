/** Scenario form model: field schema, client-side ranges, and the mapping to
 * an engine scenario document. Ranges mirror the server's validation; the
 * server stays authoritative and its field-path errors land back on the form.
 */

export interface NumberField {
  kind: "number";
  id: string; // dotted path inside the scenario document
  label: string;
  min: number;
  max: number;
  minOpen?: boolean;
  maxOpen?: boolean;
  step: number;
  unit?: string;
}

export interface SelectField {
  kind: "select";
  id: string;
  label: string;
  options: string[];
}

export type FieldSpec = NumberField | SelectField;

export const SWEEP_KS = [1, 1.25, 1.5, 2];

/** Price is entered in $/Mtok (the market convention); the document wants
 * $/token. This is the only unit translation in the client. */
export const PRICE_FIELD_ID = "pricing.price0_usd_per_mtok";
const MTOK = 1e6;

export const FIELDS: FieldSpec[] = [
  { kind: "number", id: "ran.area_km2", label: "Area", unit: "km²", min: 0, max: 10000, minOpen: true, step: 1 },
  { kind: "number", id: "ran.pop_density", label: "Population density", unit: "/km²", min: 0, max: 100000, minOpen: true, step: 100 },
  { kind: "number", id: "ran.penetration", label: "Smartphone penetration", min: 0, max: 1, minOpen: true, step: 0.05 },
  { kind: "number", id: "ran.busy_hour_factor", label: "Busy-hour concurrency", min: 0, max: 1, minOpen: true, step: 0.01 },
  { kind: "number", id: "ran.r_user0_mbps", label: "Per-user rate", unit: "Mbps", min: 0, max: 10000, step: 10 },
  { kind: "number", id: "ran.growth_annual", label: "Radio demand growth", unit: "×/yr", min: 0, max: 5, minOpen: true, step: 0.05 },
  { kind: "number", id: "llm.dens_annual", label: "Density growth", unit: "×/yr", min: 0, max: 50, minOpen: true, step: 0.01 },
  { kind: "number", id: "llm.ai_adoption", label: "Assistant adoption", min: 0, max: 1, minOpen: true, step: 0.05 },
  { kind: "number", id: "llm.demand_growth_annual", label: "Inference demand growth", unit: "×/yr", min: 0, max: 50, minOpen: true, step: 0.5 },
  { kind: "number", id: PRICE_FIELD_ID, label: "Token price", unit: "$/Mtok", min: 0, max: 100, minOpen: true, step: 0.01 },
  { kind: "select", id: "pricing.billing_mode", label: "Billing", options: ["capacity", "demand"] },
  {
    kind: "select",
    id: "pricing.opex_attribution",
    label: "OpEx attribution",
    options: ["llm_energy", "ran_opex", "both"],
  },
];

export const K_FIELD: NumberField = {
  kind: "number", id: "pricing.k_ratio", label: "Depreciation ratio k", min: 0, max: 5, step: 0.05,
};

export const TOK_FIELD: NumberField = {
  kind: "number", id: "pricing.tok_depreciation_annual", label: "Token depreciation",
  unit: "×/yr", min: 0, max: 1, minOpen: true, step: 0.01,
};

export type DimChoice = "preset" | "launch" | "end" | "custom";

export interface FormState {
  preset: "milan_s1" | "milan_s2";
  platformPrimary: string;
  platformBaseline: string;
  dimensioning: DimChoice;
  customWdim: number;
  kMode: "k" | "tok";
  values: Record<string, number | string>;
}

export function defaultFormState(): FormState {
  const values: Record<string, number | string> = {};
  for (const f of FIELDS) {
    values[f.id] = f.kind === "select" ? f.options[0] : NaN; // NaN = inherit preset default
  }
  values[K_FIELD.id] = 1.0;
  values[TOK_FIELD.id] = 0.5;
  return {
    preset: "milan_s1",
    platformPrimary: "Aerial",
    platformBaseline: "FlexRAN",
    dimensioning: "preset",
    customWdim: 0,
    kMode: "k",
    values,
  };
}

function checkRange(f: NumberField, x: number): string | null {
  if (Number.isNaN(x)) return null; // empty input -> inherit the preset default
  if (f.minOpen ? x <= f.min : x < f.min) {
    return `must be ${f.minOpen ? ">" : ">="} ${f.min}`;
  }
  if (f.maxOpen ? x >= f.max : x > f.max) {
    return `must be ${f.maxOpen ? "<" : "<="} ${f.max}`;
  }
  return null;
}

/** Client-side pre-validation mirroring the server ranges. */
export function validateForm(state: FormState): Record<string, string> {
  const errors: Record<string, string> = {};
  for (const f of FIELDS) {
    if (f.kind !== "number") continue;
    const msg = checkRange(f, Number(state.values[f.id]));
    if (msg) errors[f.id] = msg;
  }
  const kField = state.kMode === "k" ? K_FIELD : TOK_FIELD;
  const msg = checkRange(kField, Number(state.values[kField.id]));
  if (msg) errors[kField.id] = msg;
  if (state.dimensioning === "custom" && (state.customWdim < 0 || !Number.isInteger(state.customWdim))) {
    errors["w_dim"] = "must be a nonnegative integer week";
  }
  return errors;
}

function assign(doc: Record<string, unknown>, path: string, value: unknown): void {
  const keys = path.split(".");
  let node = doc;
  for (const k of keys.slice(0, -1)) {
    if (typeof node[k] !== "object" || node[k] === null) node[k] = {};
    node = node[k] as Record<string, unknown>;
  }
  node[keys[keys.length - 1]] = value;
}

/** Build the scenario document POSTed to the engine. Unset (NaN) fields are
 * omitted so the preset supplies them. */
export function toScenarioDoc(state: FormState, sweepKs?: number[]): Record<string, unknown> {
  const doc: Record<string, unknown> = { preset: state.preset };
  for (const f of FIELDS) {
    const raw = state.values[f.id];
    if (f.kind === "select") {
      assign(doc, f.id, raw);
      continue;
    }
    const x = Number(raw);
    if (Number.isNaN(x)) continue;
    if (f.id === PRICE_FIELD_ID) {
      assign(doc, "pricing.price0_usd_per_tok", x / MTOK);
    } else {
      assign(doc, f.id, x);
    }
  }
  if (state.kMode === "k") {
    const k = Number(state.values[K_FIELD.id]);
    if (!Number.isNaN(k)) assign(doc, "pricing.k_ratio", k);
  } else {
    const tok = Number(state.values[TOK_FIELD.id]);
    if (!Number.isNaN(tok)) assign(doc, "pricing.tok_depreciation_annual", tok);
  }
  if (state.dimensioning === "launch") doc["w_dim"] = 0;
  else if (state.dimensioning === "end") doc["w_dim"] = "end";
  else if (state.dimensioning === "custom") doc["w_dim"] = state.customWdim;
  doc["platform_primary"] = state.platformPrimary;
  doc["platform_baseline"] = state.platformBaseline;
  if (sweepKs) doc["sweep"] = { k: sweepKs };
  return doc;
}
