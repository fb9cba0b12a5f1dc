/** SVG backend: a laid-out scene becomes a standalone SVG document. */
import { Layout } from "./scene.js";

function esc(s: string): string {
  return s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

function polylines(px: number[], py: number[]): string[] {
  // split at NaN so envelope branches render as separate strokes
  const chunks: string[] = [];
  let pts: string[] = [];
  for (let i = 0; i < px.length; i++) {
    if (Number.isFinite(px[i]) && Number.isFinite(py[i])) {
      pts.push(`${px[i].toFixed(2)},${py[i].toFixed(2)}`);
    } else if (pts.length > 0) {
      chunks.push(pts.join(" "));
      pts = [];
    }
  }
  if (pts.length > 0) chunks.push(pts.join(" "));
  return chunks;
}

export function renderSvg(layout: Layout): string {
  const { scene, plot, xTicks, yTicks, series } = layout;
  const out: string[] = [];
  out.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${scene.width}" ` +
    `height="${scene.height}" viewBox="0 0 ${scene.width} ${scene.height}" ` +
    `font-family="Helvetica, Arial, sans-serif">`);
  out.push(`<rect width="${scene.width}" height="${scene.height}" fill="white"/>`);

  for (const t of xTicks) {
    out.push(`<line x1="${t.pos}" y1="${plot.y0}" x2="${t.pos}" y2="${plot.y1}" ` +
             `stroke="#dddddd" stroke-width="1"/>`);
    out.push(`<text x="${t.pos}" y="${plot.y1 + 16}" font-size="11" ` +
             `text-anchor="middle" fill="#333">${esc(t.label)}</text>`);
  }
  for (const t of yTicks) {
    out.push(`<line x1="${plot.x0}" y1="${t.pos}" x2="${plot.x1}" y2="${t.pos}" ` +
             `stroke="#dddddd" stroke-width="1"/>`);
    out.push(`<text x="${plot.x0 - 6}" y="${t.pos + 4}" font-size="11" ` +
             `text-anchor="end" fill="#333">${esc(t.label)}</text>`);
  }
  out.push(`<rect x="${plot.x0}" y="${plot.y0}" width="${plot.x1 - plot.x0}" ` +
           `height="${plot.y1 - plot.y0}" fill="none" stroke="#333" stroke-width="1"/>`);

  for (const s of series) {
    const dash = s.dash ? ` stroke-dasharray="6 4"` : "";
    for (const pts of polylines(s.px, s.py)) {
      out.push(`<polyline points="${pts}" fill="none" stroke="${s.color}" ` +
               `stroke-width="1.5"${dash}/>`);
    }
  }

  out.push(`<text x="${(plot.x0 + plot.x1) / 2}" y="20" font-size="14" ` +
           `text-anchor="middle" fill="#111">${esc(scene.title)}</text>`);
  out.push(`<text x="${(plot.x0 + plot.x1) / 2}" y="${scene.height - 10}" ` +
           `font-size="12" text-anchor="middle" fill="#333">${esc(scene.xLabel)}</text>`);
  out.push(`<text x="16" y="${(plot.y0 + plot.y1) / 2}" font-size="12" ` +
           `text-anchor="middle" fill="#333" ` +
           `transform="rotate(-90 16 ${(plot.y0 + plot.y1) / 2})">` +
           `${esc(scene.yLabel)}</text>`);

  // legend, top-right inside the frame
  const lx = plot.x1 - 10;
  let ly = plot.y0 + 14;
  for (const s of series) {
    out.push(`<line x1="${lx - 150}" y1="${ly - 4}" x2="${lx - 120}" y2="${ly - 4}" ` +
             `stroke="${s.color}" stroke-width="2"` +
             (s.dash ? ` stroke-dasharray="6 4"` : "") + `/>`);
    out.push(`<text x="${lx - 114}" y="${ly}" font-size="11" fill="#333">` +
             `${esc(s.label)}</text>`);
    ly += 15;
  }

  out.push("</svg>");
  return out.join("\n") + "\n";
}
