import { describe, expect, it } from "vitest";

import {
  PRICE_FIELD_ID,
  SWEEP_KS,
  defaultFormState,
  toScenarioDoc,
  validateForm,
} from "../src/form.js";

describe("toScenarioDoc", () => {
  it("sends only the preset when nothing is overridden", () => {
    const doc = toScenarioDoc(defaultFormState());
    expect(doc["preset"]).toBe("milan_s1");
    expect(doc["ran"]).toBeUndefined(); // empty inputs inherit preset values
    expect(doc["platform_primary"]).toBe("Aerial");
    expect((doc["pricing"] as Record<string, unknown>)["k_ratio"]).toBe(1);
  });

  it("nests overridden fields at their document paths", () => {
    const state = defaultFormState();
    state.values["ran.area_km2"] = 25;
    state.values["llm.ai_adoption"] = 0.7;
    const doc = toScenarioDoc(state);
    expect((doc["ran"] as Record<string, unknown>)["area_km2"]).toBe(25);
    expect((doc["llm"] as Record<string, unknown>)["ai_adoption"]).toBe(0.7);
  });

  it("converts the price input from $/Mtok to $/token", () => {
    const state = defaultFormState();
    state.values[PRICE_FIELD_ID] = 0.88;
    const doc = toScenarioDoc(state);
    expect((doc["pricing"] as Record<string, unknown>)["price0_usd_per_tok"]).toBeCloseTo(0.88e-6, 12);
  });

  it("sends exactly one depreciation member", () => {
    const state = defaultFormState();
    state.kMode = "tok";
    state.values["pricing.tok_depreciation_annual"] = 0.5;
    const doc = toScenarioDoc(state);
    const pricing = doc["pricing"] as Record<string, unknown>;
    expect(pricing["tok_depreciation_annual"]).toBe(0.5);
    expect(pricing["k_ratio"]).toBeUndefined();
  });

  it("maps the dimensioning choice onto w_dim", () => {
    const state = defaultFormState();
    expect(toScenarioDoc(state)["w_dim"]).toBeUndefined(); // preset default
    state.dimensioning = "launch";
    expect(toScenarioDoc(state)["w_dim"]).toBe(0);
    state.dimensioning = "end";
    expect(toScenarioDoc(state)["w_dim"]).toBe("end");
    state.dimensioning = "custom";
    state.customWdim = 42;
    expect(toScenarioDoc(state)["w_dim"]).toBe(42);
  });

  it("attaches the standard k sweep when asked", () => {
    const doc = toScenarioDoc(defaultFormState(), SWEEP_KS);
    expect(doc["sweep"]).toEqual({ k: [1, 1.25, 1.5, 2] });
  });
});

describe("validateForm mirrors server ranges", () => {
  it("accepts the defaults", () => {
    expect(validateForm(defaultFormState())).toEqual({});
  });

  it("rejects out-of-range fractions like the server does", () => {
    const state = defaultFormState();
    state.values["ran.busy_hour_factor"] = 1.5;
    state.values["ran.penetration"] = 0;
    const errors = validateForm(state);
    expect(errors["ran.busy_hour_factor"]).toContain("<= 1");
    expect(errors["ran.penetration"]).toContain("> 0");
  });

  it("rejects a negative depreciation ratio", () => {
    const state = defaultFormState();
    state.values["pricing.k_ratio"] = -1;
    expect(validateForm(state)["pricing.k_ratio"]).toBeDefined();
  });

  it("rejects a fractional custom dimensioning week", () => {
    const state = defaultFormState();
    state.dimensioning = "custom";
    state.customWdim = 3.5;
    expect(validateForm(state)["w_dim"]).toBeDefined();
  });

  it("treats empty inputs as preset-inherited, not invalid", () => {
    const state = defaultFormState();
    state.values["ran.area_km2"] = NaN;
    expect(validateForm(state)).toEqual({});
  });
});
