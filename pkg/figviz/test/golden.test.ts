/**
 * Renders one figure per committed golden bundle (the secondary
 * acceptance gate). Regenerate the bundles with the solver package's
 * scripts/make_goldens.py.
 */
import { existsSync, mkdtempSync, readFileSync, readdirSync } from "node:fs";
import { tmpdir } from "node:os";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";
import { describe, expect, it } from "vitest";

import { loadBundle } from "../src/bundle.js";
import { envelopeParamsFor } from "../src/recipes.js";
import { renderAuto } from "../src/render.js";

const GOLDENS = join(dirname(fileURLToPath(import.meta.url)), "..", "..", "goldens");

const experimentIds = existsSync(GOLDENS)
  ? readdirSync(GOLDENS).filter((d) => existsSync(join(GOLDENS, d, "summary.json")))
  : [];

describe("golden bundles", () => {
  it("are committed", () => {
    expect(experimentIds.length).toBeGreaterThanOrEqual(16);
  });

  it.each(experimentIds)("renders %s without error", (id) => {
    const outDir = mkdtempSync(join(tmpdir(), "figviz-golden-"));
    const outPath = join(outDir, `${id}.svg`);
    const manifest = renderAuto(join(GOLDENS, id), outPath);
    expect(existsSync(outPath)).toBe(true);
    expect(manifest.series.length).toBeGreaterThan(0);
    const svg = readFileSync(outPath, "utf8");
    expect(svg.startsWith("<svg")).toBe(true);
    expect(svg).toContain("polyline");
  });

  it("fig-env.1 envelope curves decay at rate 10", () => {
    const bundle = loadBundle(join(GOLDENS, "fig-env.1"));
    const params = envelopeParamsFor(bundle, bundle.runs[0]);
    expect(params.c).toBeCloseTo(10, 12);

    const outDir = mkdtempSync(join(tmpdir(), "figviz-env1-"));
    const outPath = join(outDir, "fig-env.1.svg");
    const manifest = renderAuto(join(GOLDENS, "fig-env.1"), outPath);
    const envSeries = manifest.series.filter((s) => s.label.includes("envelope"));
    expect(envSeries.length).toBeGreaterThanOrEqual(2);
    expect(manifest.series.some((s) => s.label === "envelope rate 10")).toBe(true);
  });

  it("fig-env.2 envelope curves decay at rate 8", () => {
    const bundle = loadBundle(join(GOLDENS, "fig-env.2"));
    expect(envelopeParamsFor(bundle, bundle.runs[0]).c).toBeCloseTo(8, 12);
  });
});
