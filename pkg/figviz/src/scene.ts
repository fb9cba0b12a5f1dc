/**
 * Minimal plot model: data series plus axes, laid out into device
 * coordinates. Backends (SVG, PNG) consume the laid-out scene.
 */

export interface Series {
  label: string;
  x: number[];
  y: number[];
  color: string;
  dash?: boolean;
}

export interface Scene {
  title: string;
  xLabel: string;
  yLabel: string;
  series: Series[];
  width: number;
  height: number;
}

export interface LaidOutSeries extends Series {
  /** device-space points; NaN entries split the polyline */
  px: number[];
  py: number[];
}

export interface Tick {
  pos: number;
  label: string;
}

export interface Layout {
  scene: Scene;
  plot: { x0: number; y0: number; x1: number; y1: number };
  xTicks: Tick[];
  yTicks: Tick[];
  series: LaidOutSeries[];
}

export const PALETTE = [
  "#1f6fb4", "#d9541e", "#2e8540", "#8436a8", "#a07e00", "#00818f",
  "#c02860", "#545454",
];

const MARGIN = { left: 62, right: 16, top: 34, bottom: 46 };

function bounds(values: number[][]): [number, number] {
  let lo = Infinity;
  let hi = -Infinity;
  for (const arr of values) {
    for (const v of arr) {
      if (!Number.isFinite(v)) continue;
      if (v < lo) lo = v;
      if (v > hi) hi = v;
    }
  }
  if (!(lo < hi)) {
    const c = Number.isFinite(lo) ? lo : 0;
    return [c - 1, c + 1];
  }
  const pad = 0.05 * (hi - lo);
  return [lo - pad, hi + pad];
}

/** round tick spacing to 1/2/5 times a power of ten */
function niceStep(span: number, target: number): number {
  const raw = span / target;
  const mag = Math.pow(10, Math.floor(Math.log10(raw)));
  for (const m of [1, 2, 5, 10]) {
    if (m * mag >= raw) return m * mag;
  }
  return 10 * mag;
}

function makeTicks(lo: number, hi: number, target = 6): number[] {
  const step = niceStep(hi - lo, target);
  const first = Math.ceil(lo / step) * step;
  const out: number[] = [];
  for (let v = first; v <= hi + 1e-12 * step; v += step) {
    out.push(Math.abs(v) < 1e-12 * step ? 0 : v);
  }
  return out;
}

export function formatTick(v: number): string {
  if (v === 0) return "0";
  const a = Math.abs(v);
  if (a >= 1e4 || a < 1e-3) return v.toExponential(1).replace("e+", "e");
  return String(Number(v.toPrecision(6)));
}

export function layoutScene(scene: Scene): Layout {
  const plot = {
    x0: MARGIN.left,
    y0: MARGIN.top,
    x1: scene.width - MARGIN.right,
    y1: scene.height - MARGIN.bottom,
  };
  const [xlo, xhi] = bounds(scene.series.map((s) => s.x));
  const [ylo, yhi] = bounds(scene.series.map((s) => s.y));
  const sx = (plot.x1 - plot.x0) / (xhi - xlo);
  const sy = (plot.y1 - plot.y0) / (yhi - ylo);
  const mapX = (v: number) => plot.x0 + (v - xlo) * sx;
  const mapY = (v: number) => plot.y1 - (v - ylo) * sy;

  const series: LaidOutSeries[] = scene.series.map((s) => ({
    ...s,
    px: s.x.map((v) => (Number.isFinite(v) ? mapX(v) : NaN)),
    py: s.y.map((v) => (Number.isFinite(v) ? mapY(v) : NaN)),
  }));

  return {
    scene,
    plot,
    xTicks: makeTicks(xlo, xhi).map((v) => ({ pos: mapX(v), label: formatTick(v) })),
    yTicks: makeTicks(ylo, yhi).map((v) => ({ pos: mapY(v), label: formatTick(v) })),
    series,
  };
}
