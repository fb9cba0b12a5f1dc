/**
 * Figure recipes: how a bundle's curves become one plot scene.
 *
 *   overlay_by_delta    final snapshot per run, colored by dispersion
 *                       strength, plus the entropy reference when present
 *   overlay_by_n        final snapshot per run (grid-refinement studies,
 *                       residual ladders)
 *   time_evolution      every snapshot of the first run
 *   envelope_overlay    final snapshot plus the predicted envelope curves
 *                       state +- c_hat * exp(-c|x|) from the metrics
 *   attractor_compare   final snapshot against the traveling-wave reference
 */
import { Bundle, BundleError, RunData } from "./bundle.js";
import { PALETTE, Scene, Series } from "./scene.js";

export const PLOT_KINDS = [
  "overlay_by_delta",
  "overlay_by_n",
  "time_evolution",
  "envelope_overlay",
  "attractor_compare",
] as const;

export type PlotKind = (typeof PLOT_KINDS)[number];

export interface FigureRecipe {
  experiment: string;
  kind: PlotKind;
  xLabel: string;
  yLabel: string;
  width: number;
  height: number;
}

export function makeRecipe(experiment: string, kind: PlotKind,
                           xLabel = "x", yLabel = "u"): FigureRecipe {
  return { experiment, kind, xLabel, yLabel, width: 860, height: 560 };
}

export function defaultKindFor(experimentId: string): PlotKind {
  if (experimentId.startsWith("fig-trav")) return "attractor_compare";
  if (experimentId.startsWith("fig-env")) return "envelope_overlay";
  if (experimentId === "fig-ex1.1" || experimentId === "fig-ex1.5"
      || experimentId.startsWith("sweep")) return "overlay_by_delta";
  if (experimentId === "fig-ex1.2" || experimentId === "fig-ex1.4"
      || experimentId === "fig-factor.1"
      || experimentId === "check-modified-equation") return "overlay_by_n";
  return "time_evolution";
}

function requireRuns(bundle: Bundle): RunData[] {
  if (bundle.runs.length === 0) {
    throw new BundleError(`bundle ${bundle.experiment} contains no runs`);
  }
  for (const run of bundle.runs) {
    if (run.snapshots.length === 0) {
      throw new BundleError(
        `run ${run.label} of ${bundle.experiment} has no snapshots`);
    }
  }
  return bundle.runs;
}

function requireAlignedSnapshots(bundle: Bundle): RunData[] {
  const runs = requireRuns(bundle);
  const count = runs[0].snapshots.length;
  for (const run of runs) {
    if (run.snapshots.length !== count) {
      throw new BundleError(
        `mismatched snapshot counts in ${bundle.experiment}: ` +
        `${runs[0].label} has ${count}, ${run.label} has ${run.snapshots.length}`);
    }
  }
  return runs;
}

function finalCurveSeries(runs: RunData[]): Series[] {
  return runs.map((run, i) => {
    const snap = run.snapshots[run.snapshots.length - 1];
    return { label: run.label, x: snap.x, y: snap.u,
             color: PALETTE[i % PALETTE.length] };
  });
}

function overlayByDelta(bundle: Bundle): Scene {
  const runs = requireAlignedSnapshots(bundle);
  const series = finalCurveSeries(runs);
  const ref = runs.find((r) => r.references.has("entropy"));
  if (ref) {
    const curve = ref.references.get("entropy")!;
    series.push({ label: "entropy solution", x: curve.x, y: curve.u,
                  color: "#000000", dash: true });
  }
  return { title: bundle.experiment, xLabel: "x", yLabel: "u",
           series, width: 0, height: 0 };
}

function overlayByN(bundle: Bundle): Scene {
  const runs = requireRuns(bundle);
  return { title: bundle.experiment, xLabel: "x", yLabel: "u",
           series: finalCurveSeries(runs), width: 0, height: 0 };
}

function timeEvolution(bundle: Bundle): Scene {
  const run = requireRuns(bundle)[0];
  const series = run.snapshots.map((snap, i) => ({
    label: `t=${snap.time}`, x: snap.x, y: snap.u,
    color: PALETTE[i % PALETTE.length],
  }));
  return { title: `${bundle.experiment} (${run.label})`, xLabel: "x",
           yLabel: "u", series, width: 0, height: 0 };
}

export interface EnvelopeParams {
  c: number;
  amplitude: number;
  leftState: number;
  rightState: number;
}

export function envelopeParamsFor(bundle: Bundle, run: RunData): EnvelopeParams {
  const env = bundle.metrics?.envelope?.[run.label];
  if (!env || typeof env.c !== "number") {
    throw new BundleError(
      `bundle ${bundle.experiment} carries no envelope metrics for ${run.label}`);
  }
  const cfg = run.config as any;
  const left = Number(cfg?.profile?.left ?? 1);
  const right = Number(cfg?.profile?.right ?? -1);
  const amplitude = Number(env.fitted_amplitude ?? env.c_hat_default
                           ?? (left - right) / 2);
  return { c: env.c, amplitude, leftState: left, rightState: right };
}

function envelopeCurves(params: EnvelopeParams, x: number[],
                        sign: 1 | -1): number[] {
  // NaN at the origin splits the two branches into separate strokes
  return x.map((v) => {
    if (v === 0) return NaN;
    const state = v < 0 ? params.leftState : params.rightState;
    return state + sign * params.amplitude * Math.exp(-params.c * Math.abs(v));
  });
}

function envelopeOverlay(bundle: Bundle): Scene {
  const run = requireRuns(bundle)[0];
  const snap = run.snapshots[run.snapshots.length - 1];
  const params = envelopeParamsFor(bundle, run);
  const cLabel = Number(params.c.toPrecision(12));
  const series: Series[] = [
    { label: run.label, x: snap.x, y: snap.u, color: PALETTE[0] },
    { label: `envelope rate ${cLabel}`, x: snap.x,
      y: envelopeCurves(params, snap.x, +1), color: "#d9541e", dash: true },
    { label: "envelope (lower)", x: snap.x,
      y: envelopeCurves(params, snap.x, -1), color: "#d9541e", dash: true },
  ];
  return { title: bundle.experiment, xLabel: "x", yLabel: "u",
           series, width: 0, height: 0 };
}

function attractorCompare(bundle: Bundle): Scene {
  const run = requireRuns(bundle)[0];
  const snap = run.snapshots[run.snapshots.length - 1];
  const wave = run.references.get("traveling_wave");
  if (!wave) {
    throw new BundleError(
      `run ${run.label} of ${bundle.experiment} has no traveling-wave reference`);
  }
  const series: Series[] = [
    { label: run.label, x: snap.x, y: snap.u, color: PALETTE[0] },
    { label: "traveling wave", x: wave.x, y: wave.u,
      color: "#000000", dash: true },
  ];
  return { title: bundle.experiment, xLabel: "x", yLabel: "u",
           series, width: 0, height: 0 };
}

export function buildScene(bundle: Bundle, recipe: FigureRecipe): Scene {
  const builders: Record<PlotKind, (b: Bundle) => Scene> = {
    overlay_by_delta: overlayByDelta,
    overlay_by_n: overlayByN,
    time_evolution: timeEvolution,
    envelope_overlay: envelopeOverlay,
    attractor_compare: attractorCompare,
  };
  const scene = builders[recipe.kind](bundle);
  scene.xLabel = recipe.xLabel;
  scene.yLabel = recipe.yLabel;
  scene.width = recipe.width;
  scene.height = recipe.height;
  return scene;
}
