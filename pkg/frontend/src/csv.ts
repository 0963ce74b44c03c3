/** Strict numeric CSV parsing for the simulator's output files. */

export interface CsvTable {
  header: string[];
  /** column-major: columns[i] lines up with header[i] */
  columns: number[][];
}

export function parseCsv(text: string, source = "<csv>"): CsvTable {
  const lines = text
    .split(/\r?\n/)
    .filter((line) => line.trim().length > 0);
  if (lines.length === 0) {
    throw new Error(`${source}: empty CSV`);
  }
  const header = lines[0]!.split(",").map((h) => h.trim());
  if (header.some((h) => h.length === 0)) {
    throw new Error(`${source}: blank column name in header`);
  }
  const columns: number[][] = header.map(() => []);
  for (let i = 1; i < lines.length; i++) {
    const cells = lines[i]!.split(",");
    if (cells.length !== header.length) {
      throw new Error(
        `${source}: row ${i} has ${cells.length} cells, header has ${header.length}`,
      );
    }
    for (let c = 0; c < cells.length; c++) {
      const value = Number(cells[c]);
      if (!Number.isFinite(value)) {
        throw new Error(`${source}: row ${i}, column ${header[c]}: not a number: ${cells[c]}`);
      }
      columns[c]!.push(value);
    }
  }
  if (columns[0]!.length === 0) {
    throw new Error(`${source}: no data rows`);
  }
  return { header, columns };
}

export function column(table: CsvTable, name: string, source = "<csv>"): number[] {
  const idx = table.header.indexOf(name);
  if (idx < 0) {
    throw new Error(`${source}: missing column ${name}`);
  }
  return table.columns[idx]!;
}
