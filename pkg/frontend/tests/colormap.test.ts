import { describe, expect, it } from "vitest";

import { heatColor, hotness } from "../src/colormap.js";

describe("heat palette", () => {
  it("is blue just above zero", () => {
    const c = heatColor(1e-9);
    expect(c.b).toBe(255);
    expect(c.r).toBe(0);
    expect(c.g).toBe(0);
  });

  it("is white at full brightness", () => {
    expect(heatColor(1)).toEqual({ r: 255, g: 255, b: 255 });
  });

  it("passes through violet and yellow stops", () => {
    expect(heatColor(0.4)).toEqual({ r: 138, g: 43, b: 226 });
    expect(heatColor(0.8)).toEqual({ r: 255, g: 255, b: 0 });
  });

  it("hotness is monotone over 256 sampled brightness values", () => {
    let prev = -Infinity;
    for (let k = 0; k < 256; k++) {
      const h = hotness(k / 255);
      expect(h).toBeGreaterThanOrEqual(prev);
      prev = h;
    }
    expect(hotness(0)).toBe(0);
    expect(hotness(1)).toBe(3);
  });

  it("clamps out-of-range brightness", () => {
    expect(heatColor(-0.5)).toEqual(heatColor(0));
    expect(heatColor(2)).toEqual(heatColor(1));
  });
});
