/**
 * Probe time-series overlays: one axes, t on the abscissa, one legend
 * entry per series.  All inputs must share the identical time column.
 */

import { readTable, tableColumn } from "./csv.js";
import { LINE_COLORS } from "./colormap.js";
import {
  HEIGHT, MARGIN, WIDTH, axisLayer, escapeXml, fm, linearScale, svgDocument,
} from "./svg.js";

export type LineSeries = {
  path: string;
  label: string;
  column?: string;      // default: second CSV column
  color?: string;
};

export type LinesSpec = {
  kind: "lines";
  inputs: LineSeries[];
  output: string;
  x_label?: string;
  y_label?: string;
  title?: string;
  axis?: { x?: [number, number]; y?: [number, number] };
};

export function renderLines(spec: LinesSpec): string {
  if (!spec.inputs || spec.inputs.length < 1) {
    throw new Error("lines plot needs at least one input series");
  }
  let t: number[] | null = null;
  const series: { label: string; values: number[]; color: string }[] = [];
  spec.inputs.forEach((inp, i) => {
    const table = readTable(inp.path);
    const tCol = tableColumn(table, "t", inp.path);
    if (t === null) {
      t = tCol;
    } else {
      if (tCol.length !== t.length ||
          tCol.some((v, j) => v !== (t as number[])[j])) {
        throw new Error(`time grid of ${inp.path} differs from the first ` +
          "series; overlays need a shared time column");
      }
    }
    const name = inp.column ?? table.header[1];
    series.push({
      label: inp.label,
      values: tableColumn(table, name, inp.path),
      color: inp.color ?? LINE_COLORS[i % LINE_COLORS.length],
    });
  });
  const times = t as unknown as number[];

  const xDomain = spec.axis?.x ?? [times[0], times[times.length - 1]];
  let yDomain = spec.axis?.y;
  if (!yDomain) {
    let lo = Infinity, hi = -Infinity;
    for (const s of series) {
      for (const v of s.values) {
        if (v < lo) lo = v;
        if (v > hi) hi = v;
      }
    }
    if (lo === hi) { lo -= 1; hi += 1; }   // flat series still get a band
    const pad = 0.05 * (hi - lo);
    yDomain = [lo - pad, hi + pad];
  }

  const xScale = linearScale(xDomain[0], xDomain[1], MARGIN.left,
    WIDTH - MARGIN.right);
  const yScale = linearScale(yDomain[0], yDomain[1], HEIGHT - MARGIN.bottom,
    MARGIN.top);

  let body = axisLayer(xScale, yScale, xDomain, yDomain,
    spec.x_label ?? "t", spec.y_label ?? "u", spec.title ?? "");
  for (const s of series) {
    const pts = times.map((tv, j) =>
      `${fm(xScale(tv))},${fm(yScale(s.values[j]))}`).join(" ");
    body += `<polyline points="${pts}" fill="none" stroke="${s.color}" ` +
      `stroke-width="1.5"/>\n`;
  }
  // legend in the top-right corner of the plot area
  const lx = WIDTH - MARGIN.right - 150;
  let ly = MARGIN.top + 12;
  for (const s of series) {
    body += `<line x1="${lx}" y1="${ly - 4}" x2="${lx + 26}" y2="${ly - 4}" ` +
      `stroke="${s.color}" stroke-width="2"/>\n`;
    body += `<text x="${lx + 32}" y="${ly}" font-size="12" fill="#222">` +
      `${escapeXml(s.label)}</text>\n`;
    ly += 18;
  }
  return svgDocument(body);
}
