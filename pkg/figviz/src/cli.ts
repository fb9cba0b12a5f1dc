/**
 * figviz render --bundle DIR --recipe NAME --out FILE.svg|FILE.png
 *
 * NAME is one of the plot kinds (overlay_by_delta, overlay_by_n,
 * time_evolution, envelope_overlay, attractor_compare) or "auto" to pick
 * the default for the bundle's experiment.
 */
import { pathToFileURL } from "node:url";

import { PLOT_KINDS, PlotKind } from "./recipes.js";
import { renderAuto } from "./render.js";

function parseArgs(argv: string[]): Map<string, string> {
  const out = new Map<string, string>();
  for (let i = 0; i < argv.length; i++) {
    if (argv[i].startsWith("--")) {
      const key = argv[i].slice(2);
      const val = argv[i + 1];
      if (val === undefined || val.startsWith("--")) {
        throw new Error(`missing value for --${key}`);
      }
      out.set(key, val);
      i++;
    } else {
      out.set("_command", argv[i]);
    }
  }
  return out;
}

export function main(argv: string[]): number {
  let args: Map<string, string>;
  try {
    args = parseArgs(argv);
  } catch (err) {
    console.error(`error: ${(err as Error).message}`);
    return 2;
  }
  if (args.get("_command") !== "render") {
    console.error("usage: figviz render --bundle DIR --recipe NAME --out FILE");
    return 2;
  }
  const bundle = args.get("bundle");
  const recipe = args.get("recipe") ?? "auto";
  const out = args.get("out");
  if (!bundle || !out) {
    console.error("render needs --bundle DIR and --out FILE");
    return 2;
  }
  if (recipe !== "auto" && !(PLOT_KINDS as readonly string[]).includes(recipe)) {
    console.error(`unknown recipe ${recipe}; known: auto, ${PLOT_KINDS.join(", ")}`);
    return 2;
  }
  try {
    const kind = recipe === "auto" ? undefined : (recipe as PlotKind);
    const manifest = renderAuto(bundle, out, kind);
    console.log(`${manifest.experiment}: ${manifest.kind} -> ${manifest.outPath} ` +
                `(${manifest.format}, ${manifest.series.length} series)`);
    return 0;
  } catch (err) {
    console.error(`error: ${(err as Error).message}`);
    return 1;
  }
}

const invokedDirectly = process.argv[1] !== undefined
  && import.meta.url === pathToFileURL(process.argv[1]).href;
if (invokedDirectly) {
  process.exit(main(process.argv.slice(2)));
}
