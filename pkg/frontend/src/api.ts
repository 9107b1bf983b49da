/**
 * Typed client for the scenario service. Every number shown anywhere in the
 * dashboard originates from one of these calls — the UI never computes
 * epidemiology, it only renders what the service exports.
 */

import type { ScenarioConfig } from "./config.js";

export interface PresetEntry {
  name: string;
  policy: ScenarioConfig["policy"];
  testing: ScenarioConfig["testing"];
}

export interface EnsembleStatus {
  run_id: string;
  state: "queued" | "running" | "done" | "failed";
  completed_runs: number;
  total_runs: number;
  error?: string;
}

export interface DayRow {
  day: number;
  mean: number;
  ci: number;
  mean_all: number;
  ci_all: number;
}

export interface ResultDoc {
  metadata: { scenario_id: string; base_seed: number; runs: number };
  metric: string;
  run_count: number;
  /** Week-end day (as a string key) -> mean cumulative infections. */
  weeks: Record<string, number>;
  days: DayRow[];
  per_run_finals: number[];
  per_run_all_finals: number[];
}

/** Fetched results keep the exact bytes the service sent alongside the
 * parsed document, so tables can render the export representation verbatim. */
export interface FetchedResults {
  doc: ResultDoc;
  raw: string;
}

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly detail: string,
  ) {
    super(`${status}: ${detail}`);
  }
}

async function readDetail(response: Response): Promise<string> {
  try {
    const body = (await response.json()) as { detail?: unknown };
    if (typeof body.detail === "string") return body.detail;
  } catch {
    // non-JSON error body; fall through to the status line
  }
  return response.statusText;
}

export class ApiClient {
  constructor(
    readonly baseUrl: string,
    private readonly fetchFn: typeof fetch = fetch,
  ) {}

  private async request(path: string, init?: RequestInit): Promise<Response> {
    let response: Response;
    try {
      response = await this.fetchFn(`${this.baseUrl}${path}`, init);
    } catch (err) {
      throw new ApiError(0, `service unreachable: ${String(err)}`);
    }
    if (!response.ok) {
      throw new ApiError(response.status, await readDetail(response));
    }
    return response;
  }

  async createScenario(
    config: ScenarioConfig,
  ): Promise<{ id: string; created: boolean }> {
    const response = await this.request("/scenarios", {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ config }),
    });
    return response.json();
  }

  async getScenario(id: string): Promise<{ id: string; config: unknown }> {
    return (await this.request(`/scenarios/${id}`)).json();
  }

  async getPresets(): Promise<PresetEntry[]> {
    return (await this.request("/presets")).json();
  }

  async startEnsemble(
    scenarioId: string,
    runs: number,
    seed: number,
  ): Promise<{ run_id: string; state: string }> {
    const response = await this.request(`/scenarios/${scenarioId}/ensembles`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ runs, seed }),
    });
    return response.json();
  }

  async getStatus(runId: string): Promise<EnsembleStatus> {
    return (await this.request(`/ensembles/${runId}/status`)).json();
  }

  async getResults(runId: string): Promise<FetchedResults> {
    const response = await this.request(`/ensembles/${runId}/results`);
    const raw = await response.text();
    return { doc: JSON.parse(raw) as ResultDoc, raw };
  }
}
