import { describe, expect, it, inject } from "vitest";

import { ApiClient } from "../src/api.js";
import { defaultConfig } from "../src/config.js";
import { campusKeyOf, submitScenario } from "../src/dashboard.js";
import { defaultForm } from "../src/form.js";
import { waitForCompletion } from "../src/progress.js";

describe("submitScenario", () => {
  it("routes a validator rejection to the offending control", async () => {
    const fetchFn = (async () =>
      new Response(
        JSON.stringify({
          detail: "bad value for policy.distancing_feet: out of range",
        }),
        { status: 400 },
      )) as typeof fetch;
    const api = new ApiClient("http://stub", fetchFn);

    const outcome = await submitScenario(api, defaultForm());
    expect(outcome.kind).toBe("invalid");
    if (outcome.kind === "invalid") {
      expect(outcome.control).toBe("distancingFeet");
      expect(outcome.message).toContain("distancing_feet");
    }
  });

  it("reports an unreachable service without losing the form", async () => {
    const fetchFn = (async () => {
      throw new TypeError("fetch failed");
    }) as typeof fetch;
    const api = new ApiClient("http://stub", fetchFn);

    const form = defaultForm();
    const outcome = await submitScenario(api, form);
    expect(outcome.kind).toBe("unreachable");
    // the caller-owned form object is untouched and can be resubmitted
    expect(form).toEqual(defaultForm());
  });

  it("happy path: valid form starts an ensemble that finishes", async () => {
    const api = new ApiClient(inject("baseUrl"));
    const base = defaultConfig();
    base.network.scale = 0.01;
    base.network.synthetic_seed = 3;

    const form = { ...defaultForm(), nRuns: 2, seed: 5 };
    const outcome = await submitScenario(api, form, base);
    expect(outcome.kind).toBe("started");
    if (outcome.kind !== "started") return;

    const final = await waitForCompletion(api, outcome.runId, () => {}, 150);
    expect(final.state).toBe("done");
    const { doc } = await api.getResults(outcome.runId);
    expect(doc.run_count).toBe(2);
    expect(doc.metadata.base_seed).toBe(5);
    expect(doc.days).toHaveLength(84);
  });
});

describe("campusKeyOf", () => {
  it("is stable under key order and sensitive to network changes", () => {
    const a = defaultConfig();
    const b = defaultConfig();
    expect(campusKeyOf(a)).toBe(campusKeyOf(b));
    b.network.synthetic_seed = 2;
    expect(campusKeyOf(a)).not.toBe(campusKeyOf(b));
  });
});
