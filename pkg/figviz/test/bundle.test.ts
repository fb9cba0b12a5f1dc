import { mkdtempSync, mkdirSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { describe, expect, it } from "vitest";

import { BundleError, loadBundle, parseCurveCsv } from "../src/bundle.js";

export function makeBundle(overrides: {
  runs?: { label: string; files: Record<string, string> }[];
  summary?: Record<string, unknown>;
} = {}): string {
  const dir = mkdtempSync(join(tmpdir(), "figviz-"));
  const runs = overrides.runs ?? [
    {
      label: "run",
      files: { "t0.csv": "x,u\n0,1\n0.5,2\n1,0\n" },
    },
  ];
  const summary = overrides.summary ?? {
    experiment: "demo",
    description: "demo bundle",
    analyses: [],
    metrics: {},
    runs: runs.map((r) => ({ label: r.label, config: null })),
  };
  writeFileSync(join(dir, "summary.json"), JSON.stringify(summary));
  for (const run of runs) {
    mkdirSync(join(dir, run.label));
    for (const [name, text] of Object.entries(run.files)) {
      writeFileSync(join(dir, run.label, name), text);
    }
  }
  return dir;
}

describe("parseCurveCsv", () => {
  it("parses the two-column format", () => {
    const curve = parseCurveCsv("x,u\n0,1\n1,-2.5e-3\n", "f.csv");
    expect(curve.x).toEqual([0, 1]);
    expect(curve.u).toEqual([1, -0.0025]);
  });

  it("rejects a missing header", () => {
    expect(() => parseCurveCsv("0,1\n1,2\n", "f.csv")).toThrow(BundleError);
  });

  it("rejects non-numeric rows", () => {
    expect(() => parseCurveCsv("x,u\n0,oops\n", "f.csv")).toThrow(BundleError);
  });
});

describe("loadBundle", () => {
  it("reads runs, snapshots, and references", () => {
    const dir = makeBundle({
      runs: [
        {
          label: "delta=0.001",
          files: {
            "t0.csv": "x,u\n0,1\n1,0\n",
            "t0.5.csv": "x,u\n0,0.5\n1,0\n",
            "reference_entropy.csv": "x,u\n0,1\n1,0\n",
          },
        },
      ],
      summary: {
        experiment: "demo",
        runs: [{ label: "delta=0.001", config: { delta: 1e-3 } }],
        metrics: {},
      },
    });
    const bundle = loadBundle(dir);
    expect(bundle.experiment).toBe("demo");
    expect(bundle.runs).toHaveLength(1);
    expect(bundle.runs[0].snapshots.map((s) => s.time)).toEqual([0, 0.5]);
    expect(bundle.runs[0].references.has("entropy")).toBe(true);
  });

  it("fails on a missing directory", () => {
    expect(() => loadBundle("/nonexistent/bundle")).toThrow(BundleError);
  });

  it("fails without summary.json", () => {
    const dir = mkdtempSync(join(tmpdir(), "figviz-empty-"));
    expect(() => loadBundle(dir)).toThrow(/summary\.json/);
  });

  it("fails when a described run directory is missing", () => {
    const dir = makeBundle({
      runs: [],
      summary: { experiment: "demo", runs: [{ label: "ghost" }], metrics: {} },
    });
    expect(() => loadBundle(dir)).toThrow(/ghost/);
  });

  it("discovers curve directories when summary lists no runs", () => {
    const dir = makeBundle({
      runs: [],
      summary: { experiment: "ladder", runs: [], metrics: {} },
    });
    mkdirSync(join(dir, "dx=0.025"));
    writeFileSync(join(dir, "dx=0.025", "t0.csv"), "x,u\n0,1\n1,2\n");
    const bundle = loadBundle(dir);
    expect(bundle.runs.map((r) => r.label)).toEqual(["dx=0.025"]);
  });
});
