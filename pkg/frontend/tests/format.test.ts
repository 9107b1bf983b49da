import { describe, expect, it } from "vitest";

import { pyFloat } from "../src/format.js";

describe("pyFloat", () => {
  it("keeps a trailing .0 on integral values", () => {
    expect(pyFloat(0)).toBe("0.0");
    expect(pyFloat(2)).toBe("2.0");
    expect(pyFloat(-17)).toBe("-17.0");
    expect(pyFloat(1919)).toBe("1919.0");
  });

  it("uses the shortest round-trip form for fractional values", () => {
    expect(pyFloat(12.34)).toBe("12.34");
    expect(pyFloat(0.5)).toBe("0.5");
    expect(pyFloat(0.1)).toBe("0.1");
    expect(pyFloat(1386.21)).toBe("1386.21");
  });

  it("writes tiny and huge magnitudes with a signed two-digit exponent", () => {
    expect(pyFloat(1e-5)).toBe("1e-05");
    expect(pyFloat(2.5e-7)).toBe("2.5e-07");
    expect(pyFloat(1.5e16)).toBe("1.5e+16");
    expect(pyFloat(1e16)).toBe("1e+16");
  });

  it("rejects non-finite values", () => {
    expect(() => pyFloat(Number.NaN)).toThrow(RangeError);
    expect(() => pyFloat(Number.POSITIVE_INFINITY)).toThrow(RangeError);
  });
});
