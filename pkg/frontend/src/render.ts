/** Turn a simulator manifest into one SVG figure on disk. */

import { mkdirSync, writeFileSync } from "node:fs";
import { join } from "node:path";

import { buildJob, type FigureJob } from "./manifest.js";
import { renderChart } from "./svg.js";

export function renderJob(job: FigureJob): string {
  if (job.series.length === 0) {
    throw new Error(`${job.name}: no curves to render`);
  }
  if (job.kind === "fidelity") {
    return renderChart({
      title: job.name,
      xLabel: "time (ms)",
      yLabel: "GHZ fidelity",
      series: job.series,
      yDomain: [0, 1],
    });
  }
  return renderChart({
    title: job.name,
    xLabel: "time (ms)",
    yLabel: "energy (kHz)",
    series: job.series,
  });
}

/** Render one manifest; returns the written image path. */
export function renderManifest(manifestPath: string, outDir: string): string {
  const job = buildJob(manifestPath);
  const svg = renderJob(job); // render fully before touching the filesystem
  mkdirSync(outDir, { recursive: true });
  const outPath = join(outDir, `${job.name}.svg`);
  writeFileSync(outPath, svg, "utf-8");
  return outPath;
}
