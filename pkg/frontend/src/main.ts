/** DOM wiring: form -> debounced engine requests -> atomic view updates. */

import { ApiValidationError, EngineClient, NetworkError } from "./api.js";
import { RequestGate, debounce } from "./debounce.js";
import {
  FIELDS,
  K_FIELD,
  PRICE_FIELD_ID,
  SWEEP_KS,
  TOK_FIELD,
  defaultFormState,
  toScenarioDoc,
  validateForm,
  type FieldSpec,
  type FormState,
  type NumberField,
} from "./form.js";
import type { ResultBundle } from "./types.js";
import { compareView, resultPanel } from "./views.js";

const DEBOUNCE_MS = 250;

const client = new EngineClient("");
const gate = new RequestGate();

const stateA = defaultFormState();
let stateB: FormState | null = null; // non-null while compare mode is on

function $(sel: string): HTMLElement {
  const el = document.querySelector(sel);
  if (!el) throw new Error(`missing element ${sel}`);
  return el as HTMLElement;
}

function fieldInputId(panel: string, fieldId: string): string {
  return `f-${panel}-${fieldId.replace(/\./g, "-")}`;
}

function numberInput(panel: string, f: NumberField, value: number | string): string {
  const id = fieldInputId(panel, f.id);
  const v = Number.isNaN(Number(value)) ? "" : String(value);
  const unit = f.unit ? `<span class="unit">${f.unit}</span>` : "";
  return (
    `<label class="field" for="${id}">${f.label}${unit}` +
    `<input id="${id}" data-panel="${panel}" data-field="${f.id}" type="number"` +
    ` min="${f.min}" max="${f.max}" step="${f.step}" value="${v}" placeholder="preset"/>` +
    `<span class="field-error" data-error-for="${panel}:${f.id}"></span></label>`
  );
}

function selectInput(panel: string, f: FieldSpec & { kind: "select" }, value: string): string {
  const id = fieldInputId(panel, f.id);
  const options = f.options
    .map((o) => `<option value="${o}"${o === value ? " selected" : ""}>${o.replace("_", " ")}</option>`)
    .join("");
  return (
    `<label class="field" for="${id}">${f.label}` +
    `<select id="${id}" data-panel="${panel}" data-field="${f.id}">${options}</select>` +
    `<span class="field-error" data-error-for="${panel}:${f.id}"></span></label>`
  );
}

function renderForm(panel: string, state: FormState, platformNames: string[]): string {
  const presetSel =
    `<label class="field">Scenario` +
    `<select data-panel="${panel}" data-field="preset">` +
    `<option value="milan_s1"${state.preset === "milan_s1" ? " selected" : ""}>1: size for launch</option>` +
    `<option value="milan_s2"${state.preset === "milan_s2" ? " selected" : ""}>2: size for end of horizon</option>` +
    `</select><span class="field-error" data-error-for="${panel}:preset"></span></label>`;
  const platformSel = (field: "platformPrimary" | "platformBaseline", label: string) =>
    `<label class="field">${label}` +
    `<select data-panel="${panel}" data-field="${field}">` +
    platformNames
      .map((n) => `<option value="${n}"${n === state[field] ? " selected" : ""}>${n}</option>`)
      .join("") +
    `</select><span class="field-error" data-error-for="${panel}:${field}"></span></label>`;
  const dimSel =
    `<label class="field">Dimensioning week` +
    `<select data-panel="${panel}" data-field="dimensioning">` +
    ["preset", "launch", "end", "custom"]
      .map((o) => `<option value="${o}"${state.dimensioning === o ? " selected" : ""}>${o}</option>`)
      .join("") +
    `</select><span class="field-error" data-error-for="${panel}:w_dim"></span></label>` +
    (state.dimensioning === "custom"
      ? `<label class="field">Custom week<input type="number" min="0" step="1" data-panel="${panel}" data-field="customWdim" value="${state.customWdim}"/></label>`
      : "");
  const kModeSel =
    `<label class="field">Depreciation input` +
    `<select data-panel="${panel}" data-field="kMode">` +
    `<option value="k"${state.kMode === "k" ? " selected" : ""}>ratio k</option>` +
    `<option value="tok"${state.kMode === "tok" ? " selected" : ""}>annual factor</option>` +
    `</select></label>`;
  const kField = state.kMode === "k" ? K_FIELD : TOK_FIELD;
  const fields = FIELDS.map((f) =>
    f.kind === "number"
      ? numberInput(panel, f, state.values[f.id])
      : selectInput(panel, f, String(state.values[f.id])),
  ).join("");
  return (
    `<form class="scenario-form" data-panel="${panel}" autocomplete="off">` +
    presetSel +
    platformSel("platformPrimary", "GPU platform") +
    platformSel("platformBaseline", "Baseline platform") +
    dimSel +
    kModeSel +
    numberInput(panel, kField, state.values[kField.id]) +
    fields +
    `</form>`
  );
}

function applyInput(state: FormState, field: string, raw: string): void {
  if (field === "preset") state.preset = raw as FormState["preset"];
  else if (field === "platformPrimary") state.platformPrimary = raw;
  else if (field === "platformBaseline") state.platformBaseline = raw;
  else if (field === "dimensioning") state.dimensioning = raw as FormState["dimensioning"];
  else if (field === "customWdim") state.customWdim = Number(raw);
  else if (field === "kMode") state.kMode = raw as FormState["kMode"];
  else state.values[field] = raw === "" ? NaN : Number(raw);
}

function clearInlineErrors(): void {
  document.querySelectorAll<HTMLElement>(".field-error").forEach((el) => (el.textContent = ""));
}

function showInlineErrors(panel: string, errors: { field: string; message: string }[]): boolean {
  let shown = false;
  for (const err of errors) {
    // server paths look like "ran.area_km2"; the price field keeps its UI id
    const key = err.field === "pricing.price0_usd_per_tok" ? PRICE_FIELD_ID : err.field;
    const slot =
      document.querySelector<HTMLElement>(`[data-error-for="${panel}:${key}"]`) ??
      document.querySelector<HTMLElement>(`[data-error-for="${panel}:${key.split(".")[0]}"]`);
    if (slot) {
      slot.textContent = err.message;
      shown = true;
    }
  }
  return shown;
}

function banner(message: string, retry: boolean): void {
  const el = $("#banner");
  el.innerHTML = message
    ? `<div class="banner">${message}${retry ? ' <button id="retry">retry</button>' : ""}</div>`
    : "";
  const btn = document.getElementById("retry");
  if (btn) btn.onclick = () => void refresh();
}

async function fetchPanel(state: FormState, signal: AbortSignal): Promise<{ bundle: ResultBundle; sweep: ResultBundle[] }> {
  const [bundle, sweep] = await Promise.all([
    client.postScenario(toScenarioDoc(state), signal),
    client.postSweep(toScenarioDoc(state, SWEEP_KS), signal),
  ]);
  return { bundle, sweep: sweep.bundles };
}

async function refresh(): Promise<void> {
  clearInlineErrors();
  const localA = validateForm(stateA);
  const localB = stateB ? validateForm(stateB) : {};
  if (Object.keys(localA).length || Object.keys(localB).length) {
    showInlineErrors("A", Object.entries(localA).map(([field, message]) => ({ field, message })));
    if (stateB) {
      showInlineErrors("B", Object.entries(localB).map(([field, message]) => ({ field, message })));
      banner("comparison blocked: fix the highlighted fields", false);
    }
    return; // results stay unchanged on invalid input
  }
  banner("", false);
  const { signal, token } = gate.begin();
  try {
    const a = await fetchPanel(stateA, signal);
    const b = stateB ? await fetchPanel(stateB, signal) : null;
    if (!gate.isCurrent(token)) return;
    const results = $("#results");
    if (b && stateB) {
      results.innerHTML = compareView(
        { ...a, label: labelOf(stateA) },
        { ...b, label: labelOf(stateB) },
      );
    } else {
      results.innerHTML = resultPanel(a.bundle, a.sweep, labelOf(stateA));
    }
  } catch (err) {
    if (err instanceof DOMException && err.name === "AbortError") return;
    if (!gate.isCurrent(token)) return;
    if (err instanceof ApiValidationError) {
      const placed = showInlineErrors("A", err.errors) || (stateB ? showInlineErrors("B", err.errors) : false);
      if (!placed) banner(`invalid scenario: ${err.message}`, false);
      if (stateB) banner("comparison blocked: fix the highlighted fields", false);
    } else if (err instanceof NetworkError) {
      banner(err.message, true);
    } else {
      banner(`unexpected error: ${err instanceof Error ? err.message : String(err)}`, true);
    }
  }
}

function labelOf(state: FormState): string {
  return state.preset === "milan_s1" ? "scenario 1" : "scenario 2";
}

const scheduleRefresh = debounce(() => void refresh(), DEBOUNCE_MS);

function rebuildForms(platformNames: string[]): void {
  $("#form-a").innerHTML = renderForm("A", stateA, platformNames);
  const holder = $("#form-b");
  holder.innerHTML = stateB ? renderForm("B", stateB, platformNames) : "";
  holder.style.display = stateB ? "" : "none";
}

async function init(): Promise<void> {
  let platformNames = ["Aerial", "FlexRAN"];
  try {
    const platforms = await client.getPlatforms();
    const singles = [...new Set(platforms.platforms.map((r) => r.platform))].filter(
      (n) => !platforms.families.includes(n),
    );
    platformNames = [...platforms.families, ...singles];
  } catch {
    banner("engine unreachable while loading the catalog", true);
  }

  rebuildForms(platformNames);

  document.body.addEventListener("input", (ev) => {
    const el = ev.target as HTMLInputElement | HTMLSelectElement;
    const field = el.dataset?.field;
    if (!field) return;
    const state = el.dataset.panel === "B" && stateB ? stateB : stateA;
    const structural = ["preset", "dimensioning", "kMode"].includes(field);
    applyInput(state, field, el.value);
    if (structural) rebuildForms(platformNames);
    scheduleRefresh();
  });

  ($("#compare-toggle") as HTMLInputElement).addEventListener("change", (ev) => {
    const on = (ev.target as HTMLInputElement).checked;
    stateB = on
      ? { ...structuredClone(stateA), preset: stateA.preset === "milan_s1" ? "milan_s2" : "milan_s1" }
      : null;
    rebuildForms(platformNames);
    scheduleRefresh();
  });

  await refresh();
}

if (typeof document !== "undefined") {
  document.addEventListener("DOMContentLoaded", () => void init());
}
