/**
 * Readers for the simulation CSV dialect: UTF-8, comma separator,
 * '.' decimal point, one header line, LF line endings.
 */

import fs from "fs";

export type Table = {
  header: string[];
  columns: number[][];
};

export type Grid = {
  x: number[];       // first row (after the empty corner cell)
  t: number[];       // first column
  values: number[][]; // values[i][j] = u(x_j, t_i)
};

function parseNumber(cell: string, where: string): number {
  const v = Number(cell);
  if (cell.trim() === "" || Number.isNaN(v)) {
    throw new Error(`malformed numeric cell ${JSON.stringify(cell)} ${where}`);
  }
  return v;
}

function readLines(path: string): string[] {
  if (!fs.existsSync(path)) {
    throw new Error(`input CSV does not exist: ${path}`);
  }
  const text = fs.readFileSync(path, "utf8");
  const lines = text.split("\n");
  while (lines.length > 0 && lines[lines.length - 1] === "") lines.pop();
  if (lines.length < 2) {
    throw new Error(`CSV ${path} has no data rows`);
  }
  return lines;
}

/** Header + numeric columns of a probe time-series file. */
export function readTable(path: string): Table {
  const lines = readLines(path);
  const header = lines[0].split(",");
  const columns: number[][] = header.map(() => []);
  for (let r = 1; r < lines.length; r++) {
    const cells = lines[r].split(",");
    if (cells.length !== header.length) {
      throw new Error(`row ${r} of ${path} has ${cells.length} cells, ` +
        `expected ${header.length}`);
    }
    for (let c = 0; c < cells.length; c++) {
      columns[c].push(parseNumber(cells[c], `at row ${r} of ${path}`));
    }
  }
  return { header, columns };
}

/** One named column of a table; the time column is named "t". */
export function tableColumn(table: Table, name: string, path: string): number[] {
  const idx = table.header.indexOf(name);
  if (idx < 0) {
    throw new Error(`column ${JSON.stringify(name)} missing from ${path} ` +
      `(has: ${table.header.join(", ")})`);
  }
  return table.columns[idx];
}

/**
 * Space-time grid file: first row is x coordinates behind an empty corner
 * cell, each following row starts with its t coordinate.
 */
export function readGrid(path: string): Grid {
  const lines = readLines(path);
  const head = lines[0].split(",");
  if (head[0] !== "") {
    throw new Error(`grid ${path}: corner cell must be empty, got ` +
      JSON.stringify(head[0]));
  }
  const x = head.slice(1).map((c, i) => parseNumber(c, `x[${i}] of ${path}`));
  if (x.length < 2 || lines.length - 1 < 2) {
    throw new Error(`grid ${path} needs at least 2 x and 2 t samples`);
  }
  const t: number[] = [];
  const values: number[][] = [];
  for (let r = 1; r < lines.length; r++) {
    const cells = lines[r].split(",");
    if (cells.length !== x.length + 1) {
      throw new Error(`grid ${path} row ${r}: expected ${x.length + 1} ` +
        `cells, got ${cells.length}`);
    }
    t.push(parseNumber(cells[0], `t[${r - 1}] of ${path}`));
    values.push(cells.slice(1).map((c, j) =>
      parseNumber(c, `value[${r - 1}][${j}] of ${path}`)));
  }
  return { x, t, values };
}
