/**
 * Scenario config types mirroring the service validator's schema.
 *
 * Every key the validator knows appears here with the same default, so a
 * config built in the browser is always accepted server-side and a config
 * fetched from the server always parses cleanly. The schema is strict:
 * unknown keys fail fast on the client exactly as they would on the server.
 */

import { z } from "zod";

export const MASK_TYPES = ["none", "cloth", "medical", "n95"] as const;
export type MaskType = (typeof MASK_TYPES)[number];

/** Unbounded caps travel as the string "inf" (strict JSON has no Infinity). */
export const capSchema = z.union([
  z.number().int().nonnegative(),
  z.literal("inf"),
]);
export type ModalityCap = z.infer<typeof capSchema>;

export const configSchema = z
  .object({
    network: z
      .object({
        source: z.enum(["synthetic", "file"]).default("synthetic"),
        enrollment_file: z.string().default(""),
        scale: z.number().positive().default(0.043),
        synthetic_seed: z.number().int().default(1),
        departments: z.number().int().positive().default(20),
        p1: z.number().min(0).max(1).default(0.7),
        p2: z.number().min(0).max(1).default(0.2),
        p3: z.number().min(0).max(1).default(0.1),
        meetings_per_week: z.number().int().positive().default(2),
        duration_hours: z.number().positive().default(1.0),
        attendance_rate: z.number().min(0).max(1).default(1.0),
      })
      .strict()
      .default({}),
    transmission: z
      .object({
        pulmonary_rate: z.number().positive().default(0.48),
        quantum_rate: z.number().positive().default(20.0),
        air_changes: z.number().positive().default(4.0),
        ceiling_height: z.number().positive().default(3.0),
        use_exact_wells_riley: z.boolean().default(false),
      })
      .strict()
      .default({}),
    progression: z
      .object({
        incubation_shape: z.number().positive().default(1.97),
        incubation_scale: z.number().positive().default(9.35),
        symptomatic_prob: z.number().min(0).max(1).default(0.65),
        contagious_shape: z.number().positive().default(3.0),
        contagious_scale: z.number().positive().default(2.6),
        severe_prob: z.number().min(0).max(1).default(0.0),
        outside_infections_per_day: z.number().int().min(0).default(5),
        initial_infected_fraction: z.number().min(0).max(1).default(0.01),
        initial_infection_age_max_days: z.number().int().min(0).default(5),
      })
      .strict()
      .default({}),
    testing: z
      .object({
        enabled: z.boolean().default(false),
        daily_capacity: z.number().int().min(0).default(0),
        sensitivity: z.number().min(0).max(1).default(0.967),
        specificity: z.number().min(0).max(1).default(1.0),
        gap_days: z.number().int().min(0).default(3),
        ct_window_days: z.number().int().min(0).default(3),
        false_positive_isolation_days: z.number().int().min(0).default(14),
      })
      .strict()
      .default({}),
    policy: z
      .object({
        student_mask_type: z.enum(MASK_TYPES).default("none"),
        student_mask_compliance: z.number().min(0).max(1).default(0.0),
        instructor_mask_type: z.enum(MASK_TYPES).default("none"),
        instructor_mask_compliance: z.number().min(0).max(1).default(0.0),
        distancing_feet: z.number().min(2).max(6).default(2.0),
        modality_cap: capSchema.default("inf"),
        online_until_day: z.number().int().min(0).default(0),
      })
      .strict()
      .default({}),
    engine: z
      .object({
        horizon_days: z.number().int().positive().default(84),
        runs: z.number().int().positive().default(1000),
        base_seed: z.number().int().default(0),
        parallelism: z.number().int().positive().default(1),
        metric: z.enum(["campus", "all"]).default("campus"),
        include_instructors_in_metric: z.boolean().default(false),
      })
      .strict()
      .default({}),
  })
  .strict();

export type ScenarioConfig = z.infer<typeof configSchema>;

export function defaultConfig(): ScenarioConfig {
  return configSchema.parse({});
}
