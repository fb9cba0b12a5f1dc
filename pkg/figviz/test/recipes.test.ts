import { readFileSync, existsSync } from "node:fs";
import { join } from "node:path";
import { tmpdir } from "node:os";
import { mkdtempSync } from "node:fs";
import { describe, expect, it } from "vitest";

import { BundleError, loadBundle } from "../src/bundle.js";
import { PLOT_KINDS, buildScene, defaultKindFor, envelopeParamsFor,
         makeRecipe } from "../src/recipes.js";
import { layoutScene } from "../src/scene.js";
import { renderSvg } from "../src/svg.js";
import { render, renderAuto } from "../src/render.js";
import { makeBundle } from "./bundle.test.js";

const out = () => join(mkdtempSync(join(tmpdir(), "figviz-out-")), "fig.svg");

describe("defaultKindFor", () => {
  it("covers the catalog families", () => {
    expect(defaultKindFor("fig-trav.1")).toBe("attractor_compare");
    expect(defaultKindFor("fig-env.2")).toBe("envelope_overlay");
    expect(defaultKindFor("fig-ex1.1")).toBe("overlay_by_delta");
    expect(defaultKindFor("fig-ex1.2")).toBe("overlay_by_n");
    expect(defaultKindFor("fig-ex1.3")).toBe("time_evolution");
    expect(defaultKindFor("fig-ex2.a.2")).toBe("time_evolution");
    expect(defaultKindFor("check-modified-equation")).toBe("overlay_by_n");
    expect(defaultKindFor("sweep-conjecture")).toBe("overlay_by_delta");
  });
});

describe("scene building", () => {
  it("overlays final snapshots with the entropy reference", () => {
    const dir = makeBundle({
      runs: [
        {
          label: "delta=0.005",
          files: {
            "t0.csv": "x,u\n0,1\n1,0\n",
            "t0.5.csv": "x,u\n0,0.6\n1,0.1\n",
            "reference_entropy.csv": "x,u\n0,0.5\n1,0\n",
          },
        },
        {
          label: "delta=0.0005",
          files: { "t0.csv": "x,u\n0,1\n1,0\n", "t0.5.csv": "x,u\n0,0.55\n1,0\n" },
        },
      ],
      summary: {
        experiment: "fig-ex1.1",
        runs: [{ label: "delta=0.005" }, { label: "delta=0.0005" }],
        metrics: {},
      },
    });
    const scene = buildScene(loadBundle(dir), makeRecipe("fig-ex1.1", "overlay_by_delta"));
    expect(scene.series.map((s) => s.label)).toEqual(
      ["delta=0.005", "delta=0.0005", "entropy solution"]);
  });

  it("rejects mismatched snapshot counts in overlays", () => {
    const dir = makeBundle({
      runs: [
        { label: "a", files: { "t0.csv": "x,u\n0,1\n1,0\n",
                               "t0.5.csv": "x,u\n0,1\n1,0\n" } },
        { label: "b", files: { "t0.csv": "x,u\n0,1\n1,0\n" } },
      ],
      summary: { experiment: "demo", runs: [{ label: "a" }, { label: "b" }],
                 metrics: {} },
    });
    expect(() => buildScene(loadBundle(dir),
                            makeRecipe("demo", "overlay_by_delta")))
      .toThrow(/mismatched snapshot counts/);
  });

  it("rejects an empty bundle", () => {
    const dir = makeBundle({
      runs: [],
      summary: { experiment: "empty", runs: [], metrics: {} },
    });
    for (const kind of PLOT_KINDS) {
      expect(() => buildScene(loadBundle(dir), makeRecipe("empty", kind)))
        .toThrow(BundleError);
    }
  });

  it("builds envelope curves from the metrics", () => {
    const dir = makeBundle({
      runs: [{ label: "N=100", files: { "t0.5.csv": "x,u\n-1,1\n0,0\n1,-1\n" } }],
      summary: {
        experiment: "fig-env.1",
        runs: [{ label: "N=100",
                 config: { profile: { left: 1, right: -1 } } }],
        metrics: { envelope: { "N=100": { c: 10, fitted_amplitude: 1.05 } } },
      },
    });
    const bundle = loadBundle(dir);
    const params = envelopeParamsFor(bundle, bundle.runs[0]);
    expect(params.c).toBe(10);
    expect(params.amplitude).toBe(1.05);
    const scene = buildScene(bundle, makeRecipe("fig-env.1", "envelope_overlay"));
    const upper = scene.series[1];
    expect(upper.label).toContain("rate 10");
    // x = 1 sits on the right state -1, amplitude 1.05*exp(-10)
    expect(upper.y[2]).toBeCloseTo(-1 + 1.05 * Math.exp(-10), 12);
  });

  it("attractor compare needs the traveling-wave reference", () => {
    const dir = makeBundle({
      runs: [{ label: "r", files: { "t0.csv": "x,u\n0,1\n1,-1\n" } }],
      summary: { experiment: "fig-trav.1", runs: [{ label: "r" }], metrics: {} },
    });
    expect(() => buildScene(loadBundle(dir),
                            makeRecipe("fig-trav.1", "attractor_compare")))
      .toThrow(/traveling-wave reference/);
  });
});

describe("render", () => {
  it("writes an SVG with all series", () => {
    const dir = makeBundle();
    const path = out();
    const manifest = render(dir, makeRecipe("demo", "time_evolution"), path);
    expect(manifest.format).toBe("svg");
    expect(existsSync(path)).toBe(true);
    const svg = readFileSync(path, "utf8");
    expect(svg).toContain("<svg");
    expect(svg).toContain("polyline");
  });

  it("writes a PNG when asked", () => {
    const dir = makeBundle();
    const path = out().replace(/\.svg$/, ".png");
    const manifest = renderAuto(dir, path, "time_evolution");
    expect(manifest.format).toBe("png");
    const bytes = readFileSync(path);
    expect([...bytes.subarray(0, 8)]).toEqual(
      [0x89, 0x50, 0x4e, 0x47, 0x0d, 0x0a, 0x1a, 0x0a]);
    expect(bytes.subarray(12, 16).toString("ascii")).toBe("IHDR");
  });

  it("does not modify the bundle", () => {
    const dir = makeBundle();
    const before = readFileSync(join(dir, "summary.json"), "utf8");
    render(dir, makeRecipe("demo", "time_evolution"), out());
    expect(readFileSync(join(dir, "summary.json"), "utf8")).toBe(before);
  });
});

describe("svg backend", () => {
  it("splits polylines at NaN", () => {
    const layout = layoutScene({
      title: "t", xLabel: "x", yLabel: "u", width: 400, height: 300,
      series: [{ label: "s", x: [0, 1, 2, 3], y: [1, NaN, 2, 3],
                 color: "#000000" }],
    });
    const svg = renderSvg(layout);
    const strokes = svg.match(/<polyline/g) ?? [];
    expect(strokes.length).toBe(2);
  });
});
