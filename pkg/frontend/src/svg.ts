/**
 * Deterministic SVG assembly: fixed viewport, fixed fonts, fixed number
 * formatting, no timestamps or generated ids, so identical inputs always
 * produce identical bytes.
 */

export const WIDTH = 720;
export const HEIGHT = 480;
export const MARGIN = { left: 64, right: 24, top: 28, bottom: 46 };

/** Shortest stable decimal form (up to 6 significant digits). */
export function fm(v: number): string {
  if (!Number.isFinite(v)) throw new Error(`non-finite coordinate ${v}`);
  if (v === 0) return "0";
  const s = v.toPrecision(6);
  return s.includes(".") || s.includes("e")
    ? String(Number(s))
    : s;
}

export type Scale = (v: number) => number;

export function linearScale(d0: number, d1: number, r0: number, r1: number): Scale {
  const span = d1 - d0;
  if (span === 0) {
    // degenerate domain: map everything to the range midpoint
    const mid = (r0 + r1) / 2;
    return () => mid;
  }
  return (v: number) => r0 + ((v - d0) / span) * (r1 - r0);
}

/** 'Nice' tick positions covering [lo, hi] (about n of them). */
export function ticks(lo: number, hi: number, n = 6): number[] {
  if (lo === hi) return [lo];
  const raw = (hi - lo) / n;
  const mag = Math.pow(10, Math.floor(Math.log10(raw)));
  const norm = raw / mag;
  const step = (norm >= 5 ? 5 : norm >= 2 ? 2 : 1) * mag;
  const first = Math.ceil(lo / step) * step;
  const out: number[] = [];
  for (let v = first; v <= hi + step * 1e-9; v += step) {
    out.push(Math.abs(v) < step * 1e-9 ? 0 : Number(v.toPrecision(12)));
  }
  return out;
}

export function svgDocument(body: string): string {
  return `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" ` +
    `height="${HEIGHT}" viewBox="0 0 ${WIDTH} ${HEIGHT}" ` +
    `font-family="Helvetica, Arial, sans-serif">\n${body}</svg>\n`;
}

export function axisLayer(
  xScale: Scale, yScale: Scale,
  xDomain: [number, number], yDomain: [number, number],
  xLabel: string, yLabel: string, title: string,
): string {
  const x0 = xScale(xDomain[0]), x1 = xScale(xDomain[1]);
  const y0 = yScale(yDomain[0]), y1 = yScale(yDomain[1]);
  let out = "";
  out += `<rect x="${x0}" y="${y1}" width="${x1 - x0}" height="${y0 - y1}" ` +
    `fill="none" stroke="#444" stroke-width="1"/>\n`;
  for (const v of ticks(xDomain[0], xDomain[1])) {
    const px = fm(xScale(v));
    out += `<line x1="${px}" y1="${y0}" x2="${px}" y2="${y0 + 5}" ` +
      `stroke="#444"/>\n`;
    out += `<text x="${px}" y="${y0 + 18}" font-size="11" fill="#222" ` +
      `text-anchor="middle">${fm(v)}</text>\n`;
  }
  for (const v of ticks(yDomain[0], yDomain[1])) {
    const py = fm(yScale(v));
    out += `<line x1="${x0 - 5}" y1="${py}" x2="${x0}" y2="${py}" ` +
      `stroke="#444"/>\n`;
    out += `<text x="${x0 - 8}" y="${py}" font-size="11" fill="#222" ` +
      `text-anchor="end" dominant-baseline="middle">${fm(v)}</text>\n`;
  }
  out += `<text x="${(x0 + x1) / 2}" y="${HEIGHT - 10}" font-size="13" ` +
    `fill="#111" text-anchor="middle">${escapeXml(xLabel)}</text>\n`;
  out += `<text x="16" y="${(y0 + y1) / 2}" font-size="13" fill="#111" ` +
    `text-anchor="middle" transform="rotate(-90 16 ${(y0 + y1) / 2})">` +
    `${escapeXml(yLabel)}</text>\n`;
  if (title) {
    out += `<text x="${(x0 + x1) / 2}" y="18" font-size="14" fill="#111" ` +
      `text-anchor="middle">${escapeXml(title)}</text>\n`;
  }
  return out;
}

export function escapeXml(s: string): string {
  return s.replace(/[&<>"']/g, (c) => ({
    "&": "&amp;", "<": "&lt;", ">": "&gt;", '"': "&quot;", "'": "&apos;",
  }[c] as string));
}
