/**
 * Ensemble progress polling. The service is stateless toward clients, so the
 * dashboard polls `/ensembles/{id}/status` once per second until the run
 * reaches a terminal state. Concurrent pollers for different runs are
 * independent; a response arriving after a newer one for the same run (or
 * after the poller stopped) is discarded.
 */

import type { ApiClient, EnsembleStatus } from "./api.js";

export const POLL_INTERVAL_MS = 1000;

export interface ProgressState {
  runId: string;
  state: EnsembleStatus["state"];
  completedRuns: number;
  totalRuns: number;
  /** 0..1, for the width of the progress bar. */
  fraction: number;
  /** e.g. "37/100 runs" — always reflects completedRuns from the service. */
  label: string;
  error?: string;
}

export function toProgressState(status: EnsembleStatus): ProgressState {
  const total = status.total_runs;
  return {
    runId: status.run_id,
    state: status.state,
    completedRuns: status.completed_runs,
    totalRuns: total,
    fraction: total > 0 ? status.completed_runs / total : 0,
    label: `${status.completed_runs}/${total} runs`,
    ...(status.error !== undefined ? { error: status.error } : {}),
  };
}

export class ProgressPoller {
  private timer: ReturnType<typeof setInterval> | null = null;
  private lastSeq = 0;
  private stopped = false;

  constructor(
    private readonly api: ApiClient,
    readonly runId: string,
    private readonly onUpdate: (state: ProgressState) => void,
    private readonly intervalMs: number = POLL_INTERVAL_MS,
  ) {}

  start(): void {
    if (this.timer !== null || this.stopped) return;
    void this.tick();
    this.timer = setInterval(() => void this.tick(), this.intervalMs);
  }

  stop(): void {
    this.stopped = true;
    if (this.timer !== null) {
      clearInterval(this.timer);
      this.timer = null;
    }
  }

  private async tick(): Promise<void> {
    const seq = ++this.lastSeq;
    let status: EnsembleStatus;
    try {
      status = await this.api.getStatus(this.runId);
    } catch {
      return; // transient fetch failure; the next interval retries
    }
    // Discard stale or misrouted responses: only the newest reply for this
    // poller's runId may update the indicator.
    if (this.stopped || seq !== this.lastSeq || status.run_id !== this.runId) {
      return;
    }
    this.onUpdate(toProgressState(status));
    if (status.state === "done" || status.state === "failed") {
      this.stop();
    }
  }
}

/** Poll until the run finishes; resolves with the terminal state. */
export function waitForCompletion(
  api: ApiClient,
  runId: string,
  onUpdate: (state: ProgressState) => void = () => {},
  intervalMs: number = POLL_INTERVAL_MS,
): Promise<ProgressState> {
  return new Promise((resolve, reject) => {
    const poller = new ProgressPoller(
      api,
      runId,
      (state) => {
        onUpdate(state);
        if (state.state === "done") resolve(state);
        if (state.state === "failed") {
          reject(new Error(state.error ?? "ensemble run failed"));
        }
      },
      intervalMs,
    );
    poller.start();
  });
}
