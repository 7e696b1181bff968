/** Digit-exactness contract: what the UI renders is the payload, verbatim.
 *
 * The recorded fixture files were written by the engine; these tests check
 * that String() on the parsed doubles reproduces the exact token in the
 * file, i.e. displaying a number never changes a digit.
 */

import { readFileSync } from "node:fs";
import { join } from "node:path";

import { describe, expect, it } from "vitest";

import { exact } from "../src/format.js";
import type { FeedbackBundle, SessionView } from "../src/types.js";

const fixturesDir = join(__dirname, "fixtures");
const viewsText = readFileSync(join(fixturesDir, "views.json"), "utf-8");
const views: Record<string, SessionView> = JSON.parse(viewsText);
const bundleText = readFileSync(join(fixturesDir, "bundle.json"), "utf-8");
const bundle: FeedbackBundle = JSON.parse(bundleText);

function rawToken(text: string, key: string): string {
  const match = text.match(new RegExp(`"${key}":\\s*(-?[0-9][^,\\s}\\]]*)`));
  if (match === null) throw new Error(`no numeric token for ${key}`);
  return match[1]!;
}

describe("fitted parameters render digit-exact", () => {
  it("location fit", () => {
    const fit = views.mean_fitted!.fits.location!;
    expect(exact(fit.params.mean!)).toBe(rawToken(viewsText, "mean"));
    expect(exact(fit.params.variance!)).toBe(rawToken(viewsText, "variance"));
  });

  it("variance fit", () => {
    const fit = views.variance_fitted!.fits.variance!;
    const paramsMatch = viewsText.match(/"params": \[\s*([-0-9.e]+),\s*([-0-9.e]+)\s*\]/);
    expect(paramsMatch).not.toBeNull();
    expect(exact(fit.params[0])).toBe(paramsMatch![1]);
    expect(exact(fit.params[1])).toBe(paramsMatch![2]);
    expect(exact(fit.sigma2_05)).toBe(rawToken(viewsText, "sigma2_05"));
    expect(exact(fit.sigma2_95)).toBe(rawToken(viewsText, "sigma2_95"));
  });

  it("bundle intervals", () => {
    const [lo, hi] = bundle.quantile_intervals["0.05"]!;
    const match = bundleText.match(/"0.05": \[\s*([-0-9.e]+),\s*([-0-9.e]+)\s*\]/);
    expect(match).not.toBeNull();
    expect(exact(lo)).toBe(match![1]);
    expect(exact(hi)).toBe(match![2]);
  });
});

describe("payload shapes", () => {
  it("worked-example values appear in the recorded payloads", () => {
    expect(views.mean_fitted!.fits.location!.params.mean).toBe(35);
    expect(views.mean_fitted!.fits.location!.params.variance).toBeCloseTo(9.24, 2);
    const [a, b] = views.variance_fitted!.fits.variance!.params;
    expect(a).toBeCloseTo(31.5, 0);
    expect(b).toBeCloseTo(2514, -1);
    const [a2, b2] = views.revised!.fits.variance!.params;
    expect(a2).toBeCloseTo(62.8, 0);
    expect(b2).toBeCloseTo(7114, -1);
  });

  it("bundle carries the documented fields", () => {
    expect(bundle.schema_version).toBe(1);
    expect(bundle.grid.length).toBe(bundle.config.J);
    expect(bundle.cdf_lower.length).toBe(bundle.grid.length);
    expect(bundle.overlay_curves.map((c) => c.label)).toEqual(["sigma2_05", "sigma2_95"]);
  });
});
