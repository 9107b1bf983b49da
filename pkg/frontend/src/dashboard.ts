/**
 * Dashboard orchestration: submit a scenario form, launch preset
 * comparisons, and surface errors either inline at a form control or as an
 * actionable banner. Pure data flow — rendering lives in main.ts so these
 * paths are testable without a browser.
 */

import { ApiClient, ApiError, type FetchedResults } from "./api.js";
import {
  type ComparisonEntry,
  type ComparisonView,
  buildComparison,
} from "./comparison.js";
import { type ScenarioConfig, defaultConfig } from "./config.js";
import { type ScenarioForm, controlForError, formToConfig } from "./form.js";
import { type ProgressState, waitForCompletion } from "./progress.js";

export type SubmitOutcome =
  | { kind: "started"; scenarioId: string; runId: string }
  | { kind: "invalid"; control: keyof ScenarioForm | null; message: string }
  | { kind: "unreachable"; message: string };

/**
 * Serialize the form, register the scenario, and start its ensemble.
 * Validator rejections come back pointed at the offending control; a dead
 * service comes back as a banner message. The caller keeps the form state in
 * both failure cases.
 */
export async function submitScenario(
  api: ApiClient,
  form: ScenarioForm,
  base: ScenarioConfig = defaultConfig(),
): Promise<SubmitOutcome> {
  const config = formToConfig(form, base);
  try {
    const { id } = await api.createScenario(config);
    const { run_id } = await api.startEnsemble(
      id,
      config.engine.runs,
      config.engine.base_seed,
    );
    return { kind: "started", scenarioId: id, runId: run_id };
  } catch (err) {
    if (err instanceof ApiError && err.status === 400) {
      return {
        kind: "invalid",
        control: controlForError(err.detail),
        message: err.detail,
      };
    }
    if (err instanceof ApiError && err.status === 0) {
      return {
        kind: "unreachable",
        message: "scenario service is not responding — is it running? " +
          "Your inputs are preserved; retry when the service is back.",
      };
    }
    throw err;
  }
}

export interface PresetRun {
  name: string;
  scenarioId: string;
  runId: string;
}

/**
 * Launch one ensemble per service preset on a shared base config (same
 * campus, same seed — common random numbers across the comparison).
 */
export async function startPresetComparison(
  api: ApiClient,
  base: ScenarioConfig,
  runs: number,
  seed: number,
): Promise<PresetRun[]> {
  const presets = await api.getPresets();
  const launched: PresetRun[] = [];
  for (const preset of presets) {
    const config: ScenarioConfig = {
      ...base,
      policy: preset.policy,
      testing: preset.testing,
    };
    const { id } = await api.createScenario(config);
    const { run_id } = await api.startEnsemble(id, runs, seed);
    launched.push({ name: preset.name, scenarioId: id, runId: run_id });
  }
  return launched;
}

/**
 * Wait for every launched preset run and assemble the comparison view. All
 * runs share the base config's network, so they carry one campus key.
 */
export async function collectComparison(
  api: ApiClient,
  runs: PresetRun[],
  campusKey: string,
  onProgress: (name: string, state: ProgressState) => void = () => {},
  intervalMs?: number,
): Promise<ComparisonView> {
  const entries: ComparisonEntry[] = [];
  for (const run of runs) {
    await waitForCompletion(
      api,
      run.runId,
      (state) => onProgress(run.name, state),
      intervalMs,
    );
    const results: FetchedResults = await api.getResults(run.runId);
    entries.push({ label: run.name, results, campusKey });
  }
  return buildComparison(entries);
}

/** Campus identity for mismatch warnings: the network section, canonical. */
export function campusKeyOf(config: ScenarioConfig): string {
  const net = config.network;
  return JSON.stringify(
    Object.fromEntries(Object.entries(net).sort(([a], [b]) =>
      a < b ? -1 : 1,
    )),
  );
}
