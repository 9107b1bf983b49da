/**
 * Browser shell: wires the form, progress indicator, and comparison view to
 * the DOM. All logic lives in the DOM-free modules; this file only reads
 * controls and injects rendered fragments.
 */

import { ApiClient } from "./api.js";
import {
  buildComparison,
  renderChartSvg,
  renderTimelineStrip,
  renderWeekTable,
} from "./comparison.js";
import { defaultConfig } from "./config.js";
import {
  campusKeyOf,
  collectComparison,
  startPresetComparison,
  submitScenario,
} from "./dashboard.js";
import {
  CAP_CHOICES,
  MASK_TYPES,
  type ScenarioForm,
  defaultForm,
} from "./form.js";
import { ProgressPoller } from "./progress.js";

const api = new ApiClient(
  new URLSearchParams(location.search).get("service") ??
    "http://localhost:8000",
);

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

function readForm(): ScenarioForm {
  const value = (id: string) => (el<HTMLInputElement>(id)).value;
  return {
    studentMaskType: value("student-mask") as ScenarioForm["studentMaskType"],
    studentMaskCompliance: Number(value("student-compliance")),
    instructorMaskType:
      value("instructor-mask") as ScenarioForm["instructorMaskType"],
    instructorMaskCompliance: Number(value("instructor-compliance")),
    distancingFeet: Number(value("distancing")),
    modalityCap: value("cap") === "inf" ? "inf" : Number(value("cap")),
    testingEnabled: el<HTMLInputElement>("testing-enabled").checked,
    testingCapacity: Number(value("testing-capacity")),
    onlineUntilDay: Number(value("online-until")),
    nRuns: Number(value("n-runs")),
    seed: Number(value("seed")),
  };
}

function populateSelectors(): void {
  el<HTMLSelectElement>("student-mask").innerHTML = MASK_TYPES.map(
    (m) => `<option value="${m}">${m}</option>`,
  ).join("");
  el<HTMLSelectElement>("instructor-mask").innerHTML =
    el<HTMLSelectElement>("student-mask").innerHTML;
  el<HTMLSelectElement>("cap").innerHTML = CAP_CHOICES.map(
    (c) => `<option value="${c}">${c === "inf" ? "no cap" : c}</option>`,
  ).join("");
}

function showBanner(message: string): void {
  const banner = el<HTMLDivElement>("banner");
  banner.textContent = message;
  banner.hidden = message === "";
}

async function onSubmit(): Promise<void> {
  document
    .querySelectorAll(".field-error")
    .forEach((node) => node.remove());
  showBanner("");
  const outcome = await submitScenario(api, readForm());
  if (outcome.kind === "unreachable") {
    showBanner(outcome.message);
    return;
  }
  if (outcome.kind === "invalid") {
    if (outcome.control) {
      const note = document.createElement("span");
      note.className = "field-error";
      note.textContent = outcome.message;
      el(String(outcome.control)).after(note);
    } else {
      showBanner(outcome.message);
    }
    return;
  }
  const bar = el<HTMLProgressElement>("run-progress");
  const label = el<HTMLSpanElement>("run-progress-label");
  const poller = new ProgressPoller(api, outcome.runId, (state) => {
    bar.value = state.fraction;
    label.textContent = state.label;
    if (state.state === "done") {
      void api.getResults(outcome.runId).then((results) => {
        const view = buildComparison([{ label: "custom", results }]);
        el("chart").innerHTML = renderChartSvg(view);
        el("table").innerHTML = renderWeekTable(view);
      });
    }
  });
  poller.start();
}

async function onCompare(): Promise<void> {
  showBanner("");
  const base = defaultConfig();
  const runs = Number(el<HTMLInputElement>("n-runs").value) || 100;
  const seed = Number(el<HTMLInputElement>("seed").value) || 0;
  const launched = await startPresetComparison(api, base, runs, seed);
  el("timeline").innerHTML = renderTimelineStrip(
    launched.map((r) => r.name),
  );
  const bar = el<HTMLProgressElement>("run-progress");
  const label = el<HTMLSpanElement>("run-progress-label");
  const view = await collectComparison(
    api,
    launched,
    campusKeyOf(base),
    (name, state) => {
      bar.value = state.fraction;
      label.textContent = `${name}: ${state.label}`;
    },
  );
  el("chart").innerHTML = renderChartSvg(view);
  el("table").innerHTML = renderWeekTable(view);
  showBanner(view.warnings.join("; "));
}

populateSelectors();
el<HTMLButtonElement>("submit").addEventListener("click", () => {
  void onSubmit();
});
el<HTMLButtonElement>("compare").addEventListener("click", () => {
  void onCompare();
});
