/**
 * PNG backend: rasterizes a laid-out scene without native image
 * dependencies (Bresenham strokes, a 5x7 bitmap font, zlib-deflated
 * PNG chunks). Labels are uppercased to stay within the font.
 */
import { deflateSync } from "node:zlib";
import { Layout } from "./scene.js";

// 5x7 glyphs, five column bytes each, bit 0 = top row
const FONT: Record<string, number[]> = {
  "0": [0x3e, 0x51, 0x49, 0x45, 0x3e], "1": [0x00, 0x42, 0x7f, 0x40, 0x00],
  "2": [0x42, 0x61, 0x51, 0x49, 0x46], "3": [0x21, 0x41, 0x45, 0x4b, 0x31],
  "4": [0x18, 0x14, 0x12, 0x7f, 0x10], "5": [0x27, 0x45, 0x45, 0x45, 0x39],
  "6": [0x3c, 0x4a, 0x49, 0x49, 0x30], "7": [0x01, 0x71, 0x09, 0x05, 0x03],
  "8": [0x36, 0x49, 0x49, 0x49, 0x36], "9": [0x06, 0x49, 0x49, 0x29, 0x1e],
  A: [0x7e, 0x11, 0x11, 0x11, 0x7e], B: [0x7f, 0x49, 0x49, 0x49, 0x36],
  C: [0x3e, 0x41, 0x41, 0x41, 0x22], D: [0x7f, 0x41, 0x41, 0x22, 0x1c],
  E: [0x7f, 0x49, 0x49, 0x49, 0x41], F: [0x7f, 0x09, 0x09, 0x09, 0x01],
  G: [0x3e, 0x41, 0x49, 0x49, 0x7a], H: [0x7f, 0x08, 0x08, 0x08, 0x7f],
  I: [0x00, 0x41, 0x7f, 0x41, 0x00], J: [0x20, 0x40, 0x41, 0x3f, 0x01],
  K: [0x7f, 0x08, 0x14, 0x22, 0x41], L: [0x7f, 0x40, 0x40, 0x40, 0x40],
  M: [0x7f, 0x02, 0x0c, 0x02, 0x7f], N: [0x7f, 0x04, 0x08, 0x10, 0x7f],
  O: [0x3e, 0x41, 0x41, 0x41, 0x3e], P: [0x7f, 0x09, 0x09, 0x09, 0x06],
  Q: [0x3e, 0x41, 0x51, 0x21, 0x5e], R: [0x7f, 0x09, 0x19, 0x29, 0x46],
  S: [0x46, 0x49, 0x49, 0x49, 0x31], T: [0x01, 0x01, 0x7f, 0x01, 0x01],
  U: [0x3f, 0x40, 0x40, 0x40, 0x3f], V: [0x1f, 0x20, 0x40, 0x20, 0x1f],
  W: [0x3f, 0x40, 0x38, 0x40, 0x3f], X: [0x63, 0x14, 0x08, 0x14, 0x63],
  Y: [0x07, 0x08, 0x70, 0x08, 0x07], Z: [0x61, 0x51, 0x49, 0x45, 0x43],
  " ": [0, 0, 0, 0, 0], "-": [0x08, 0x08, 0x08, 0x08, 0x08],
  ".": [0x00, 0x60, 0x60, 0x00, 0x00], ",": [0x00, 0x50, 0x30, 0x00, 0x00],
  "=": [0x14, 0x14, 0x14, 0x14, 0x14], "(": [0x00, 0x1c, 0x22, 0x41, 0x00],
  ")": [0x00, 0x41, 0x22, 0x1c, 0x00], "/": [0x20, 0x10, 0x08, 0x04, 0x02],
  "+": [0x08, 0x08, 0x3e, 0x08, 0x08], ":": [0x00, 0x36, 0x36, 0x00, 0x00],
  "|": [0x00, 0x00, 0x7f, 0x00, 0x00], "*": [0x14, 0x08, 0x3e, 0x08, 0x14],
};

class Raster {
  data: Uint8Array;
  constructor(public width: number, public height: number) {
    this.data = new Uint8Array(width * height * 3).fill(255);
  }

  set(x: number, y: number, r: number, g: number, b: number): void {
    if (x < 0 || y < 0 || x >= this.width || y >= this.height) return;
    const i = (y * this.width + x) * 3;
    this.data[i] = r;
    this.data[i + 1] = g;
    this.data[i + 2] = b;
  }

  line(x0: number, y0: number, x1: number, y1: number,
       rgb: [number, number, number], dash = false): void {
    let xa = Math.round(x0);
    let ya = Math.round(y0);
    const xb = Math.round(x1);
    const yb = Math.round(y1);
    const dx = Math.abs(xb - xa);
    const dy = -Math.abs(yb - ya);
    const sx = xa < xb ? 1 : -1;
    const sy = ya < yb ? 1 : -1;
    let err = dx + dy;
    let step = 0;
    for (;;) {
      if (!dash || step % 8 < 5) this.set(xa, ya, ...rgb);
      if (xa === xb && ya === yb) break;
      const e2 = 2 * err;
      if (e2 >= dy) { err += dy; xa += sx; }
      if (e2 <= dx) { err += dx; ya += sy; }
      step++;
    }
  }

  text(x: number, y: number, s: string, rgb: [number, number, number]): void {
    let cx = Math.round(x);
    const cy = Math.round(y);
    for (const raw of s.toUpperCase()) {
      const glyph = FONT[raw] ?? FONT[" "];
      for (let col = 0; col < 5; col++) {
        for (let row = 0; row < 7; row++) {
          if ((glyph[col] >> row) & 1) this.set(cx + col, cy + row, ...rgb);
        }
      }
      cx += 6;
    }
  }
}

function hexColor(c: string): [number, number, number] {
  const v = parseInt(c.replace("#", ""), 16);
  return [(v >> 16) & 0xff, (v >> 8) & 0xff, v & 0xff];
}

const CRC_TABLE = (() => {
  const table = new Uint32Array(256);
  for (let n = 0; n < 256; n++) {
    let c = n;
    for (let k = 0; k < 8; k++) c = c & 1 ? 0xedb88320 ^ (c >>> 1) : c >>> 1;
    table[n] = c >>> 0;
  }
  return table;
})();

function crc32(buf: Uint8Array): number {
  let c = 0xffffffff;
  for (const byte of buf) c = CRC_TABLE[(c ^ byte) & 0xff] ^ (c >>> 8);
  return (c ^ 0xffffffff) >>> 0;
}

function chunk(type: string, data: Uint8Array): Buffer {
  const head = Buffer.alloc(8);
  head.writeUInt32BE(data.length, 0);
  head.write(type, 4, "ascii");
  const body = Buffer.concat([head.subarray(4), Buffer.from(data)]);
  const crc = Buffer.alloc(4);
  crc.writeUInt32BE(crc32(body), 0);
  return Buffer.concat([head.subarray(0, 4), body, crc]);
}

export function encodePng(raster: Raster): Buffer {
  const { width, height, data } = raster;
  const ihdr = Buffer.alloc(13);
  ihdr.writeUInt32BE(width, 0);
  ihdr.writeUInt32BE(height, 4);
  ihdr[8] = 8;   // bit depth
  ihdr[9] = 2;   // truecolor RGB
  const rows = Buffer.alloc(height * (1 + width * 3));
  for (let y = 0; y < height; y++) {
    const off = y * (1 + width * 3);
    rows[off] = 0; // filter: none
    rows.set(data.subarray(y * width * 3, (y + 1) * width * 3), off + 1);
  }
  return Buffer.concat([
    Buffer.from([0x89, 0x50, 0x4e, 0x47, 0x0d, 0x0a, 0x1a, 0x0a]),
    chunk("IHDR", ihdr),
    chunk("IDAT", deflateSync(rows)),
    chunk("IEND", new Uint8Array(0)),
  ]);
}

export function renderPng(layout: Layout): Buffer {
  const { scene, plot, xTicks, yTicks, series } = layout;
  const ink: [number, number, number] = [40, 40, 40];
  const grid: [number, number, number] = [221, 221, 221];
  const r = new Raster(scene.width, scene.height);

  for (const t of xTicks) {
    r.line(t.pos, plot.y0, t.pos, plot.y1, grid);
    r.text(t.pos - 3 * t.label.length, plot.y1 + 8, t.label, ink);
  }
  for (const t of yTicks) {
    r.line(plot.x0, t.pos, plot.x1, t.pos, grid);
    r.text(plot.x0 - 6 * t.label.length - 8, t.pos - 3, t.label, ink);
  }
  r.line(plot.x0, plot.y0, plot.x1, plot.y0, ink);
  r.line(plot.x0, plot.y1, plot.x1, plot.y1, ink);
  r.line(plot.x0, plot.y0, plot.x0, plot.y1, ink);
  r.line(plot.x1, plot.y0, plot.x1, plot.y1, ink);

  for (const s of series) {
    const rgb = hexColor(s.color);
    for (let i = 1; i < s.px.length; i++) {
      const ok = [s.px[i - 1], s.py[i - 1], s.px[i], s.py[i]]
        .every(Number.isFinite);
      if (ok) r.line(s.px[i - 1], s.py[i - 1], s.px[i], s.py[i], rgb, s.dash);
    }
  }

  r.text((plot.x0 + plot.x1) / 2 - 3 * scene.title.length, 12, scene.title, ink);
  r.text((plot.x0 + plot.x1) / 2 - 3 * scene.xLabel.length,
         scene.height - 16, scene.xLabel, ink);
  r.text(4, plot.y0 - 12, scene.yLabel, ink);

  let ly = plot.y0 + 8;
  for (const s of series) {
    const rgb = hexColor(s.color);
    r.line(plot.x1 - 150, ly + 3, plot.x1 - 126, ly + 3, rgb, s.dash);
    r.text(plot.x1 - 120, ly, s.label, ink);
    ly += 12;
  }
  return encodePng(r);
}
