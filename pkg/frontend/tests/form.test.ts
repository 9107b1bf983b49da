import { describe, expect, it, inject } from "vitest";

import { configSchema, defaultConfig } from "../src/config.js";
import {
  type ScenarioForm,
  clampForm,
  configToForm,
  controlForError,
  defaultForm,
  formToConfig,
} from "../src/form.js";

const SAMPLE: ScenarioForm = {
  studentMaskType: "cloth",
  studentMaskCompliance: 80,
  instructorMaskType: "n95",
  instructorMaskCompliance: 100,
  distancingFeet: 4.5,
  modalityCap: 30,
  testingEnabled: true,
  testingCapacity: 215,
  onlineUntilDay: 14,
  nRuns: 100,
  seed: 11,
};

describe("control clamping", () => {
  it("keeps compliance inside [0, 100] percent", () => {
    const over = clampForm({ ...defaultForm(), studentMaskCompliance: 120 });
    expect(over.studentMaskCompliance).toBe(100);
    const under = clampForm({
      ...defaultForm(),
      instructorMaskCompliance: -5,
    });
    expect(under.instructorMaskCompliance).toBe(0);
  });

  it("keeps distancing on the 2-6 ft track", () => {
    expect(clampForm({ ...defaultForm(), distancingFeet: 7 }).distancingFeet)
      .toBe(6);
    expect(clampForm({ ...defaultForm(), distancingFeet: 1 }).distancingFeet)
      .toBe(2);
  });

  it("falls back to no cap for a value outside the selector", () => {
    expect(clampForm({ ...defaultForm(), modalityCap: 45 }).modalityCap).toBe(
      "inf",
    );
  });

  it("keeps run settings positive integers", () => {
    const clamped = clampForm({ ...defaultForm(), nRuns: 0, seed: 3.7 });
    expect(clamped.nRuns).toBe(1);
    expect(clamped.seed).toBe(4);
  });
});

describe("form/config round-trip", () => {
  it("serializes to a config the client schema accepts", () => {
    expect(() => configSchema.parse(formToConfig(SAMPLE))).not.toThrow();
  });

  it("is lossless: form -> config -> form", () => {
    const back = configToForm(formToConfig(SAMPLE));
    expect(back).toEqual(clampForm(SAMPLE));
  });

  it("round-trips the default form through the default config", () => {
    expect(configToForm(formToConfig(defaultForm()))).toEqual(defaultForm());
  });

  it("leaves non-policy sections of the base config untouched", () => {
    const base = defaultConfig();
    base.network.scale = 0.01;
    base.network.synthetic_seed = 3;
    const config = formToConfig(SAMPLE, base);
    expect(config.network).toEqual(base.network);
    expect(config.transmission).toEqual(base.transmission);
    expect(config.progression).toEqual(base.progression);
  });
});

describe("inline error routing", () => {
  it("maps validator messages to the offending control", () => {
    expect(
      controlForError("bad value for policy.distancing_feet: out of range"),
    ).toBe("distancingFeet");
    expect(controlForError("bad value for testing.daily_capacity: nope")).toBe(
      "testingCapacity",
    );
    expect(controlForError("unknown section [frobnicate]")).toBeNull();
  });
});

describe("round-trip against the live validator", () => {
  it("the serialized form is accepted and loads back identically", async () => {
    const baseUrl = inject("baseUrl");
    const config = formToConfig(SAMPLE);

    const created = await fetch(`${baseUrl}/scenarios`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ config }),
    });
    expect(created.ok).toBe(true);
    const { id } = (await created.json()) as { id: string };

    const fetched = await fetch(`${baseUrl}/scenarios/${id}`);
    expect(fetched.ok).toBe(true);
    const stored = (await fetched.json()) as { config: unknown };

    const resolved = configSchema.parse(stored.config);
    expect(configToForm(resolved)).toEqual(clampForm(SAMPLE));
  });

  it("the validator rejects configs the schema rejects", async () => {
    const baseUrl = inject("baseUrl");
    const response = await fetch(`${baseUrl}/scenarios`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({
        config: { policy: { student_mask_type: "paperbag" } },
      }),
    });
    // the service validator and the client schema must agree
    expect(
      configSchema.shape.policy.safeParse({ student_mask_type: "paperbag" })
        .success,
    ).toBe(false);
    expect(response.status).toBe(400);
  });
});
