/** JSON shapes returned by the engine API. The UI renders these verbatim. */

export interface FleetInfo {
  platform: string;
  g_total: number;
  w_dim: number;
  h_peak: number;
  capex_usd: number;
}

export interface AllocationView {
  g_total: number;
  hourly_week0: { ran: number[]; llm: number[]; idle: number[] };
  weekly_avg: { ran: number[]; llm: number[]; idle: number[] };
  unmet_ran_hours: number;
}

export interface SeriesView {
  weekly_revenue_usd: number[];
  weekly_net_return_usd: number[];
  cumulative_return_usd: number[];
  ran_opex_usd: number[];
  llm_energy_usd: number[];
}

export interface RoiView {
  investment_usd: number;
  break_even_week: number | null;
  return_multiple: number | null;
  cumulative_total_usd: number;
}

export interface ResultBundle {
  config_digest: string;
  engine: { name: string; version: string; backend: string };
  scenario: Record<string, unknown> & {
    name: string;
    horizon_weeks: number;
    pricing: { k_ratio: number | null; tok_depreciation_annual: number | null };
  };
  fleets: { primary: FleetInfo; baseline: FleetInfo };
  pricing: { rho_tok: number; column_label: string };
  allocation: AllocationView;
  series: SeriesView;
  roi: RoiView;
}

export interface SweepResponse {
  config_digest: string;
  bundles: ResultBundle[];
}

export interface FieldError {
  field: string;
  message: string;
}

export interface PlatformRow {
  platform: string;
  l1_stack: string;
  config: string;
  cost_usd: number;
  power_w: number;
  b_mhz: number;
  eta_c_mhz_per_usd: number;
  eta_o_mhz_per_w: number;
}

export interface PlatformsResponse {
  config_digest: string;
  platforms: PlatformRow[];
  families: string[];
}
