/** Rendering entry point: bundle directory + recipe -> image file. */
import { writeFileSync } from "node:fs";
import { extname } from "node:path";

import { loadBundle } from "./bundle.js";
import { FigureRecipe, PlotKind, buildScene, defaultKindFor,
         makeRecipe } from "./recipes.js";
import { layoutScene } from "./scene.js";
import { renderPng } from "./png.js";
import { renderSvg } from "./svg.js";

export interface RenderManifest {
  experiment: string;
  kind: PlotKind;
  outPath: string;
  format: "svg" | "png";
  width: number;
  height: number;
  series: { label: string; points: number }[];
}

export function render(bundleDir: string, recipe: FigureRecipe,
                       outPath: string): RenderManifest {
  const bundle = loadBundle(bundleDir);
  const scene = buildScene(bundle, recipe);
  const layout = layoutScene(scene);
  const format = extname(outPath).toLowerCase() === ".png" ? "png" : "svg";
  if (format === "png") {
    writeFileSync(outPath, renderPng(layout));
  } else {
    writeFileSync(outPath, renderSvg(layout), "utf8");
  }
  return {
    experiment: bundle.experiment,
    kind: recipe.kind,
    outPath,
    format,
    width: scene.width,
    height: scene.height,
    series: scene.series.map((s) => ({ label: s.label, points: s.x.length })),
  };
}

export function renderAuto(bundleDir: string, outPath: string,
                           kind?: PlotKind): RenderManifest {
  const bundle = loadBundle(bundleDir);
  const chosen = kind ?? defaultKindFor(bundle.experiment);
  return render(bundleDir, makeRecipe(bundle.experiment, chosen), outPath);
}
