#!/usr/bin/env node
/**
 * plot_figures <manifest.json> [more manifests...] --out <dir>
 *
 * Reads simulator manifests, renders one SVG per manifest into the
 * output directory. Exits 1 on any bad input; nothing is written for a
 * manifest that fails validation.
 */

import { pathToFileURL } from "node:url";

import { renderManifest } from "./render.js";

function usage(): never {
  console.error("usage: plot_figures <manifest.json> [...] --out <dir>");
  process.exit(1);
}

export function main(argv: string[]): number {
  const manifests: string[] = [];
  let outDir: string | null = null;
  for (let i = 0; i < argv.length; i++) {
    const arg = argv[i]!;
    if (arg === "--out") {
      outDir = argv[++i] ?? null;
    } else if (arg.startsWith("-")) {
      usage();
    } else {
      manifests.push(arg);
    }
  }
  if (manifests.length === 0 || outDir === null) {
    usage();
  }
  for (const manifest of manifests) {
    try {
      const written = renderManifest(manifest, outDir);
      console.log(`wrote ${written}`);
    } catch (err) {
      console.error(`error: ${(err as Error).message}`);
      return 1;
    }
  }
  return 0;
}

if (process.argv[1] && import.meta.url === pathToFileURL(process.argv[1]).href) {
  process.exit(main(process.argv.slice(2)));
}
