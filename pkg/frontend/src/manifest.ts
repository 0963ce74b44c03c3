/** Manifest schema emitted by the simulator CLI, plus figure-job assembly. */

import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";

import { column, parseCsv } from "./csv.js";

export type FigureKind = "spectrum" | "fidelity";

export interface ManifestCurve {
  label: string;
  csv: string;
}

export interface Manifest {
  preset: string | null;
  kind: FigureKind;
  curves: ManifestCurve[];
}

export interface Series {
  label: string;
  x: number[];
  y: number[];
}

/** One rendered image: a set of series on shared time (ms) axes. */
export interface FigureJob {
  name: string;
  kind: FigureKind;
  series: Series[];
}

export function loadManifest(path: string): Manifest {
  let parsed: unknown;
  try {
    parsed = JSON.parse(readFileSync(path, "utf-8"));
  } catch (err) {
    throw new Error(`${path}: cannot read manifest: ${(err as Error).message}`);
  }
  const obj = parsed as Record<string, unknown>;
  const kind = obj["kind"];
  if (kind !== "spectrum" && kind !== "fidelity") {
    throw new Error(`${path}: unsupported manifest kind: ${String(kind)}`);
  }
  const curves = obj["curves"];
  if (!Array.isArray(curves) || curves.length === 0) {
    throw new Error(`${path}: manifest has no curves`);
  }
  const out: ManifestCurve[] = [];
  for (const entry of curves) {
    const c = entry as Record<string, unknown>;
    if (typeof c["label"] !== "string" || typeof c["csv"] !== "string") {
      throw new Error(`${path}: curve entries need string 'label' and 'csv'`);
    }
    out.push({ label: c["label"], csv: c["csv"] });
  }
  const labels = new Set(out.map((c) => c.label));
  if (labels.size !== out.length) {
    throw new Error(`${path}: curve labels are not unique`);
  }
  const preset = typeof obj["preset"] === "string" ? obj["preset"] : null;
  return { preset, kind, curves: out };
}

const MS_PER_S = 1e3;
const KHZ_PER_HZ = 1e-3;

function sameGrid(a: number[], b: number[]): boolean {
  return a.length === b.length && a.every((v, i) => v === b[i]);
}

/** Read every CSV referenced by a manifest and assemble the figure job. */
export function buildJob(manifestPath: string, nameHint?: string): FigureJob {
  const manifest = loadManifest(manifestPath);
  const dir = dirname(manifestPath);
  const name = nameHint ?? manifest.preset ?? "figure";
  const series: Series[] = [];
  let grid: number[] | null = null;

  for (const curve of manifest.curves) {
    const csvPath = join(dir, curve.csv);
    const table = parseCsv(readFileSync(csvPath, "utf-8"), csvPath);
    const timesMs = column(table, "t_s", csvPath).map((t) => t * MS_PER_S);
    if (grid === null) {
      grid = timesMs;
    } else if (!sameGrid(grid, timesMs)) {
      throw new Error(`${csvPath}: time grid differs from the manifest's other curves`);
    }
    if (manifest.kind === "fidelity") {
      series.push({
        label: curve.label,
        x: timesMs,
        y: column(table, "fidelity_ghz_plus", csvPath),
      });
    } else {
      const levelNames = table.header.filter((h) => /^level_\d+_hz$/.test(h));
      if (levelNames.length === 0) {
        throw new Error(`${csvPath}: no level_*_hz columns in spectrum CSV`);
      }
      for (const levelName of levelNames) {
        series.push({
          label: levelName.replace(/_hz$/, ""),
          x: timesMs,
          y: column(table, levelName, csvPath).map((v) => v * KHZ_PER_HZ),
        });
      }
    }
  }
  return { name, kind: manifest.kind, series };
}
