#!/usr/bin/env node
/**
 * figplots <spec.json> [...more specs]
 *
 * Each spec describes one figure:
 *
 *   { "kind": "lines", "output": "fig3.svg",
 *     "inputs": [{"path": "a.csv", "label": "c1 = 0.75"}, ...],
 *     "title": "...", "axis": {"y": [-1.5, 1.5]} }
 *
 *   { "kind": "contour", "output": "fig11.svg", "input": "grid.csv",
 *     "colormap": "viridis", "levels": 16 }
 *
 * Inputs are the simulation CSV artifacts; rendering never modifies them,
 * and identical spec + CSV bytes produce identical SVG bytes.
 */

import fs from "fs";
import path from "path";
import { pathToFileURL } from "url";
import { LinesSpec, renderLines } from "./lines.js";
import { ContourSpec, renderContour } from "./contour.js";

export type PlotSpec = LinesSpec | ContourSpec;

export function renderSpec(specPath: string): string {
  const raw = fs.readFileSync(specPath, "utf8");
  let spec: PlotSpec;
  try {
    spec = JSON.parse(raw) as PlotSpec;
  } catch (e) {
    throw new Error(`spec ${specPath} is not valid JSON: ${String(e)}`);
  }
  const dir = path.dirname(path.resolve(specPath));
  const resolve = (p: string) =>
    path.isAbsolute(p) ? p : path.join(dir, p);

  let svg: string;
  if (spec.kind === "lines") {
    const resolved = {
      ...spec,
      inputs: spec.inputs?.map((s) => ({ ...s, path: resolve(s.path) })),
    };
    svg = renderLines(resolved);
  } else if (spec.kind === "contour") {
    svg = renderContour({ ...spec, input: resolve(spec.input) });
  } else {
    throw new Error(
      `spec ${specPath}: kind must be "lines" or "contour", got ` +
      JSON.stringify((spec as { kind?: string }).kind));
  }
  const outPath = resolve(spec.output);
  fs.mkdirSync(path.dirname(outPath), { recursive: true });
  fs.writeFileSync(outPath, svg, "utf8");
  return outPath;
}

function main(argv: string[]): number {
  const specs = argv.slice(2);
  if (specs.length === 0) {
    console.error("usage: figplots <spec.json> [...more specs]");
    return 1;
  }
  try {
    for (const s of specs) {
      console.log(renderSpec(s));
    }
  } catch (e) {
    console.error(`error: ${e instanceof Error ? e.message : String(e)}`);
    return 1;
  }
  return 0;
}

const entry = process.argv[1]
  ? (() => { try { return fs.realpathSync(process.argv[1]); } catch { return ""; } })()
  : "";
if (entry && import.meta.url === pathToFileURL(entry).href) {
  process.exit(main(process.argv));
}
