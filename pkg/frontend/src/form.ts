/**
 * Scenario form model: the policy decision dimensions as form controls.
 *
 * The form is plain data; the UI performs no epidemiological computation.
 * `formToConfig` / `configToForm` are exact inverses on clamped forms, so
 * form state always serializes to a config the service validator accepts
 * and a stored scenario loads back into identical controls.
 */

import {
  MASK_TYPES,
  type MaskType,
  type ModalityCap,
  type ScenarioConfig,
  defaultConfig,
} from "./config.js";

/** Selector options for the class-size cap control. */
export const CAP_CHOICES: ModalityCap[] = [30, 60, "inf"];

export interface ScenarioForm {
  studentMaskType: MaskType;
  /** Percent, 0–100 (the config stores a 0–1 fraction). */
  studentMaskCompliance: number;
  instructorMaskType: MaskType;
  instructorMaskCompliance: number;
  /** Feet, slider range 2–6. */
  distancingFeet: number;
  modalityCap: ModalityCap;
  testingEnabled: boolean;
  /** Tests per day when testing is enabled. */
  testingCapacity: number;
  onlineUntilDay: number;
  nRuns: number;
  seed: number;
}

export function defaultForm(): ScenarioForm {
  return {
    studentMaskType: "none",
    studentMaskCompliance: 0,
    instructorMaskType: "none",
    instructorMaskCompliance: 0,
    distancingFeet: 2,
    modalityCap: "inf",
    testingEnabled: false,
    testingCapacity: 0,
    onlineUntilDay: 0,
    nRuns: 100,
    seed: 0,
  };
}

function bounded(value: number, lo: number, hi: number): number {
  return Math.min(hi, Math.max(lo, value));
}

/**
 * Enforce the control ranges. Sliders cannot physically leave their track,
 * but programmatic updates (URL restore, keyboard entry) go through here so
 * impossible states like 120% compliance never reach the serializer.
 */
export function clampForm(form: ScenarioForm): ScenarioForm {
  return {
    ...form,
    studentMaskCompliance: Math.round(
      bounded(form.studentMaskCompliance, 0, 100),
    ),
    instructorMaskCompliance: Math.round(
      bounded(form.instructorMaskCompliance, 0, 100),
    ),
    distancingFeet: bounded(form.distancingFeet, 2, 6),
    modalityCap: CAP_CHOICES.includes(form.modalityCap)
      ? form.modalityCap
      : "inf",
    testingCapacity: Math.max(0, Math.round(form.testingCapacity)),
    onlineUntilDay: Math.max(0, Math.round(form.onlineUntilDay)),
    nRuns: Math.max(1, Math.round(form.nRuns)),
    seed: Math.round(form.seed),
  };
}

/**
 * Serialize form state into a full scenario config. Sections the form does
 * not control (network, transmission, progression) come from `base` so a
 * comparison can pin every preset to the same campus.
 */
export function formToConfig(
  form: ScenarioForm,
  base: ScenarioConfig = defaultConfig(),
): ScenarioConfig {
  const f = clampForm(form);
  return {
    ...base,
    policy: {
      student_mask_type: f.studentMaskType,
      student_mask_compliance: f.studentMaskCompliance / 100,
      instructor_mask_type: f.instructorMaskType,
      instructor_mask_compliance: f.instructorMaskCompliance / 100,
      distancing_feet: f.distancingFeet,
      modality_cap: f.modalityCap,
      online_until_day: f.onlineUntilDay,
    },
    testing: {
      ...base.testing,
      enabled: f.testingEnabled,
      daily_capacity: f.testingCapacity,
    },
    engine: {
      ...base.engine,
      runs: f.nRuns,
      base_seed: f.seed,
    },
  };
}

export function configToForm(config: ScenarioConfig): ScenarioForm {
  const p = config.policy;
  return clampForm({
    studentMaskType: p.student_mask_type,
    studentMaskCompliance: p.student_mask_compliance * 100,
    instructorMaskType: p.instructor_mask_type,
    instructorMaskCompliance: p.instructor_mask_compliance * 100,
    distancingFeet: p.distancing_feet,
    modalityCap: p.modality_cap,
    testingEnabled: config.testing.enabled,
    testingCapacity: config.testing.daily_capacity,
    onlineUntilDay: p.online_until_day,
    nRuns: config.engine.runs,
    seed: config.engine.base_seed,
  });
}

/**
 * Map a validator rejection ("bad value for policy.distancing_feet: ...")
 * to the form control it belongs to, so the message renders inline at the
 * offending input instead of in a global banner.
 */
export function controlForError(detail: string): keyof ScenarioForm | null {
  const fields: Record<string, keyof ScenarioForm> = {
    "policy.student_mask_type": "studentMaskType",
    "policy.student_mask_compliance": "studentMaskCompliance",
    "policy.instructor_mask_type": "instructorMaskType",
    "policy.instructor_mask_compliance": "instructorMaskCompliance",
    "policy.distancing_feet": "distancingFeet",
    "policy.modality_cap": "modalityCap",
    "policy.online_until_day": "onlineUntilDay",
    "testing.enabled": "testingEnabled",
    "testing.daily_capacity": "testingCapacity",
    "engine.runs": "nRuns",
    "engine.base_seed": "seed",
  };
  for (const [key, control] of Object.entries(fields)) {
    if (detail.includes(key)) return control;
  }
  return null;
}

export { MASK_TYPES };
