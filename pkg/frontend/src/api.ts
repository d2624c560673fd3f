/** Typed client for the engine's HTTP/JSON API. */

import type { FieldError, PlatformsResponse, ResultBundle, SweepResponse } from "./types.js";

export class ApiValidationError extends Error {
  errors: FieldError[];

  constructor(errors: FieldError[]) {
    super(errors.map((e) => `${e.field}: ${e.message}`).join("; "));
    this.name = "ApiValidationError";
    this.errors = errors;
  }
}

export class NetworkError extends Error {
  constructor(cause: unknown) {
    super(`engine unreachable: ${cause instanceof Error ? cause.message : String(cause)}`);
    this.name = "NetworkError";
  }
}

async function post<T>(base: string, path: string, doc: unknown, signal?: AbortSignal): Promise<T> {
  let resp: Response;
  try {
    resp = await fetch(base + path, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(doc),
      signal,
    });
  } catch (err) {
    if (err instanceof DOMException && err.name === "AbortError") throw err;
    throw new NetworkError(err);
  }
  const body = await resp.json();
  if (resp.status === 400) throw new ApiValidationError((body as { errors: FieldError[] }).errors);
  if (!resp.ok) throw new NetworkError(`HTTP ${resp.status}`);
  return body as T;
}

async function get<T>(base: string, path: string): Promise<T> {
  let resp: Response;
  try {
    resp = await fetch(base + path);
  } catch (err) {
    throw new NetworkError(err);
  }
  if (!resp.ok) throw new NetworkError(`HTTP ${resp.status}`);
  return (await resp.json()) as T;
}

export class EngineClient {
  constructor(private base: string = "") {}

  postScenario(doc: unknown, signal?: AbortSignal): Promise<ResultBundle> {
    return post<ResultBundle>(this.base, "/api/scenario", doc, signal);
  }

  postSweep(doc: unknown, signal?: AbortSignal): Promise<SweepResponse> {
    return post<SweepResponse>(this.base, "/api/sweep", doc, signal);
  }

  getPlatforms(): Promise<PlatformsResponse> {
    return get<PlatformsResponse>(this.base, "/api/platforms");
  }

  getPresets(): Promise<{ config_digest: string; presets: Record<string, unknown> }> {
    return get(this.base, "/api/presets");
  }

  getHealth(): Promise<{ status: string }> {
    return get(this.base, "/api/health");
  }
}
