/**
 * Space-time panels: the grid file is rendered as a filled x-t heatmap
 * (piecewise-constant filled contours over the sample cells) with a
 * vertical color bar.
 */

import { readGrid } from "./csv.js";
import { ColormapName, colormap } from "./colormap.js";
import {
  HEIGHT, MARGIN, WIDTH, axisLayer, fm, linearScale, svgDocument,
} from "./svg.js";

export type ContourSpec = {
  kind: "contour";
  input: string;
  output: string;
  x_label?: string;
  y_label?: string;
  title?: string;
  colormap?: ColormapName;
  levels?: number;
  range?: [number, number];   // color range; default: data min/max
};

export function renderContour(spec: ContourSpec): string {
  const grid = readGrid(spec.input);
  const cmap = spec.colormap ?? "viridis";
  const levels = spec.levels ?? 16;
  if (levels < 2) throw new Error("contour needs at least 2 levels");

  let lo = Infinity, hi = -Infinity;
  for (const row of grid.values) {
    for (const v of row) {
      if (v < lo) lo = v;
      if (v > hi) hi = v;
    }
  }
  if (spec.range) [lo, hi] = spec.range;
  const flat = hi === lo;     // constant grid renders as a single color

  const xDomain: [number, number] = [grid.x[0], grid.x[grid.x.length - 1]];
  const tDomain: [number, number] = [grid.t[0], grid.t[grid.t.length - 1]];
  const barWidth = 46;
  const xScale = linearScale(xDomain[0], xDomain[1], MARGIN.left,
    WIDTH - MARGIN.right - barWidth);
  const yScale = linearScale(tDomain[0], tDomain[1], HEIGHT - MARGIN.bottom,
    MARGIN.top);

  const quantize = (v: number): number => {
    if (flat) return 0.5;
    const u = (v - lo) / (hi - lo);
    const bin = Math.min(levels - 1, Math.max(0, Math.floor(u * levels)));
    return (bin + 0.5) / levels;
  };

  // cell (i, j) spans midpoints of neighbouring samples, so every sample
  // owns one rectangle and a 2x2 grid still renders four cells
  const edges = (coords: number[], scale: (v: number) => number): number[] => {
    const e = [scale(coords[0])];
    for (let i = 0; i + 1 < coords.length; i++) {
      e.push(scale((coords[i] + coords[i + 1]) / 2));
    }
    e.push(scale(coords[coords.length - 1]));
    return e;
  };
  const xe = edges(grid.x, xScale);
  const te = edges(grid.t, yScale);

  let cells = "";
  for (let i = 0; i < grid.t.length; i++) {
    for (let j = 0; j < grid.x.length; j++) {
      const x0 = Math.min(xe[j], xe[j + 1]);
      const w = Math.abs(xe[j + 1] - xe[j]);
      const y0 = Math.min(te[i], te[i + 1]);
      const h = Math.abs(te[i + 1] - te[i]);
      const color = colormap(cmap, quantize(grid.values[i][j]));
      cells += `<rect x="${fm(x0)}" y="${fm(y0)}" width="${fm(w)}" ` +
        `height="${fm(h)}" fill="${color}"/>\n`;
    }
  }

  // color bar with level swatches
  let bar = "";
  const bx = WIDTH - MARGIN.right - barWidth + 14;
  const by0 = HEIGHT - MARGIN.bottom, by1 = MARGIN.top;
  for (let l = 0; l < levels; l++) {
    const yTop = by0 + (by1 - by0) * ((l + 1) / levels);
    const h = (by0 - by1) / levels;
    bar += `<rect x="${bx}" y="${fm(yTop)}" width="12" height="${fm(h)}" ` +
      `fill="${colormap(cmap, (l + 0.5) / levels)}"/>\n`;
  }
  bar += `<text x="${bx + 16}" y="${by0}" font-size="10" fill="#222">` +
    `${fm(lo)}</text>\n`;
  bar += `<text x="${bx + 16}" y="${by1 + 8}" font-size="10" fill="#222">` +
    `${fm(hi)}</text>\n`;

  const frame = axisLayer(xScale, yScale, xDomain, tDomain,
    spec.x_label ?? "x", spec.y_label ?? "t", spec.title ?? "");
  return svgDocument(cells + frame + bar);
}
