/**
 * Fixed color maps.  The polynomial fits below are evaluated at fixed
 * anchor counts, so a given (map, levels) pair always yields the same hex
 * strings.
 */

export type ColormapName = "viridis" | "coolwarm" | "gray";

function clamp01(v: number): number {
  return v < 0 ? 0 : v > 1 ? 1 : v;
}

function hex2(v: number): string {
  const b = Math.round(clamp01(v) * 255);
  return b.toString(16).padStart(2, "0");
}

/** Polynomial approximation of matplotlib's viridis (max error ~1/255). */
function viridis(t: number): [number, number, number] {
  const c = clamp01(t);
  const r = 0.2777 + c * (0.1050 + c * (-0.3308 + c * (-4.6342 + c * (6.2282 + c * (4.7763 - c * 5.4354)))));
  const g = 0.0054 + c * (1.4046 + c * (0.2142 + c * (-5.7991 + c * (14.1799 + c * (-13.7451 + c * 4.6456)))));
  const b = 0.3340 + c * (1.3845 + c * (0.0953 + c * (-19.3324 + c * (56.6906 + c * (-65.3529 + c * 26.3124)))));
  return [r, g, b];
}

function coolwarm(t: number): [number, number, number] {
  const c = clamp01(t);
  // diverging blue-white-red through linear blending
  if (c < 0.5) {
    const u = c / 0.5;
    return [0.23 + 0.74 * u, 0.30 + 0.67 * u, 0.75 + 0.21 * u];
  }
  const u = (c - 0.5) / 0.5;
  return [0.97 - 0.27 * u, 0.97 - 0.73 * u, 0.96 - 0.72 * u];
}

function gray(t: number): [number, number, number] {
  const c = clamp01(t);
  return [c, c, c];
}

const MAPS = { viridis, coolwarm, gray } as const;

export function colormap(name: ColormapName, t: number): string {
  const fn = MAPS[name];
  if (!fn) throw new Error(`unknown colormap ${JSON.stringify(name)}`);
  const [r, g, b] = fn(t);
  return `#${hex2(r)}${hex2(g)}${hex2(b)}`;
}

/** Default line colors for overlays, matched to common plotting defaults. */
export const LINE_COLORS = [
  "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
  "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
];
