/**
 * Result-bundle reader.
 *
 * A bundle directory is produced by the solver harness:
 *
 *   <bundle>/summary.json            configs, diagnostics, metrics
 *   <bundle>/<run-label>/t<time>.csv snapshot curves, header "x,u"
 *   <bundle>/<run-label>/reference_*.csv   optional reference curves
 *
 * Reading is strictly read-only; nothing here writes into a bundle.
 */
import { readFileSync, readdirSync, existsSync, statSync } from "node:fs";
import { join, basename } from "node:path";

export class BundleError extends Error {
  constructor(message: string) {
    super(message);
    this.name = "BundleError";
  }
}

export interface Curve {
  x: number[];
  u: number[];
}

export interface Snapshot extends Curve {
  time: number;
  file: string;
}

export interface RunData {
  label: string;
  config: Record<string, unknown> | null;
  snapshots: Snapshot[];
  references: Map<string, Curve>;
}

export interface Bundle {
  dir: string;
  experiment: string;
  description: string;
  analyses: string[];
  metrics: Record<string, any>;
  runs: RunData[];
}

export function parseCurveCsv(text: string, file: string): Curve {
  const lines = text.split(/\r?\n/).filter((ln) => ln.length > 0);
  if (lines.length < 2 || lines[0].trim() !== "x,u") {
    throw new BundleError(`${file}: expected header "x,u" and data rows`);
  }
  const x: number[] = [];
  const u: number[] = [];
  for (let i = 1; i < lines.length; i++) {
    const parts = lines[i].split(",");
    if (parts.length !== 2) {
      throw new BundleError(`${file}: bad row ${i + 1}: ${lines[i]}`);
    }
    const xv = Number(parts[0]);
    const uv = Number(parts[1]);
    if (!Number.isFinite(xv) || !Number.isFinite(uv)) {
      throw new BundleError(`${file}: non-numeric row ${i + 1}: ${lines[i]}`);
    }
    x.push(xv);
    u.push(uv);
  }
  return { x, u };
}

function readCurve(path: string): Curve {
  return parseCurveCsv(readFileSync(path, "utf8"), path);
}

function snapshotTime(file: string): number {
  const m = /^t(.+)\.csv$/.exec(basename(file));
  if (!m) throw new BundleError(`not a snapshot filename: ${file}`);
  const t = Number(m[1]);
  if (!Number.isFinite(t)) {
    throw new BundleError(`cannot parse snapshot time from ${file}`);
  }
  return t;
}

export function loadBundle(dir: string): Bundle {
  if (!existsSync(dir) || !statSync(dir).isDirectory()) {
    throw new BundleError(`bundle directory not found: ${dir}`);
  }
  const summaryPath = join(dir, "summary.json");
  if (!existsSync(summaryPath)) {
    throw new BundleError(`missing summary.json in ${dir}`);
  }
  let summary: any;
  try {
    summary = JSON.parse(readFileSync(summaryPath, "utf8"));
  } catch (err) {
    throw new BundleError(`cannot parse ${summaryPath}: ${err}`);
  }

  const runs: RunData[] = [];
  const recs: any[] = Array.isArray(summary.runs) ? summary.runs : [];
  for (const rec of recs) {
    const label = String(rec.label);
    const runDir = join(dir, label);
    if (!existsSync(runDir)) {
      throw new BundleError(`run directory missing for ${label} in ${dir}`);
    }
    const snapshots: Snapshot[] = [];
    const references = new Map<string, Curve>();
    for (const file of readdirSync(runDir).sort()) {
      const path = join(runDir, file);
      if (/^t.+\.csv$/.test(file)) {
        snapshots.push({ ...readCurve(path), time: snapshotTime(file), file });
      } else if (/^reference_.+\.csv$/.test(file)) {
        references.set(file.replace(/^reference_|\.csv$/g, ""), readCurve(path));
      }
    }
    snapshots.sort((a, b) => a.time - b.time);
    runs.push({ label, config: rec.config ?? null, snapshots, references });
  }

  // run directories not described by summary.json (e.g. the per-dx residual
  // fields of the modified-equation check) still carry plottable curves
  if (runs.length === 0) {
    for (const entry of readdirSync(dir).sort()) {
      const sub = join(dir, entry);
      if (!statSync(sub).isDirectory()) continue;
      const snapshots: Snapshot[] = [];
      for (const file of readdirSync(sub).sort()) {
        if (/^t.+\.csv$/.test(file)) {
          const path = join(sub, file);
          snapshots.push({ ...readCurve(path), time: snapshotTime(file), file });
        }
      }
      if (snapshots.length > 0) {
        runs.push({ label: entry, config: null, snapshots, references: new Map() });
      }
    }
  }

  return {
    dir,
    experiment: String(summary.experiment ?? basename(dir)),
    description: String(summary.description ?? ""),
    analyses: Array.isArray(summary.analyses) ? summary.analyses.map(String) : [],
    metrics: summary.metrics ?? {},
    runs,
  };
}
