/** Minimal deterministic SVG line charts (no DOM, no canvas). */

import type { Series } from "./manifest.js";

export interface ChartSpec {
  title: string;
  xLabel: string;
  yLabel: string;
  series: Series[];
  /** fixed y range; data range with 5% padding when omitted */
  yDomain?: [number, number];
}

const WIDTH = 860;
const HEIGHT = 520;
const MARGIN = { top: 42, right: 180, bottom: 58, left: 78 };

const PALETTE = [
  "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
  "#8c564b", "#e377c2", "#17becf", "#7f7f7f", "#bcbd22",
];

function fmt(value: number): string {
  if (value === 0) return "0";
  const rounded = Number(value.toPrecision(6));
  return String(rounded);
}

function coord(value: number): string {
  return value.toFixed(2);
}

/** tick positions with a 1/2/5 step covering [lo, hi] */
export function ticks(lo: number, hi: number, target = 6): number[] {
  if (!(hi > lo)) return [lo];
  const span = hi - lo;
  const raw = span / target;
  const mag = Math.pow(10, Math.floor(Math.log10(raw)));
  let step = mag;
  for (const mult of [1, 2, 5, 10]) {
    if (mag * mult >= raw) {
      step = mag * mult;
      break;
    }
  }
  const out: number[] = [];
  for (let v = Math.ceil(lo / step) * step; v <= hi + 1e-12 * span; v += step) {
    out.push(Math.abs(v) < 1e-12 * span ? 0 : v);
  }
  return out;
}

function extent(values: number[]): [number, number] {
  let lo = Infinity;
  let hi = -Infinity;
  for (const v of values) {
    if (v < lo) lo = v;
    if (v > hi) hi = v;
  }
  return [lo, hi];
}

export function renderChart(spec: ChartSpec): string {
  if (spec.series.length === 0) {
    throw new Error(`${spec.title}: no series to plot`);
  }
  for (const s of spec.series) {
    if (s.x.length === 0 || s.x.length !== s.y.length) {
      throw new Error(`${spec.title}: series ${s.label} is empty or ragged`);
    }
  }
  const [xLo, xHi] = extent(spec.series.flatMap((s) => s.x));
  let yLo: number;
  let yHi: number;
  if (spec.yDomain) {
    [yLo, yHi] = spec.yDomain;
  } else {
    [yLo, yHi] = extent(spec.series.flatMap((s) => s.y));
    const pad = (yHi - yLo || Math.abs(yHi) || 1) * 0.05;
    yLo -= pad;
    yHi += pad;
  }
  const plotW = WIDTH - MARGIN.left - MARGIN.right;
  const plotH = HEIGHT - MARGIN.top - MARGIN.bottom;
  const sx = (v: number) => MARGIN.left + ((v - xLo) / (xHi - xLo || 1)) * plotW;
  const sy = (v: number) => MARGIN.top + plotH - ((v - yLo) / (yHi - yLo || 1)) * plotH;

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${WIDTH} ${HEIGHT}" ` +
      `font-family="Helvetica, Arial, sans-serif" font-size="14">`,
  );
  parts.push(`<rect width="${WIDTH}" height="${HEIGHT}" fill="white"/>`);
  parts.push(
    `<text x="${MARGIN.left + plotW / 2}" y="24" text-anchor="middle" ` +
      `font-size="17" font-weight="bold">${spec.title}</text>`,
  );

  for (const tx of ticks(xLo, xHi)) {
    const x = coord(sx(tx));
    parts.push(
      `<line x1="${x}" y1="${MARGIN.top}" x2="${x}" y2="${MARGIN.top + plotH}" ` +
        `stroke="#dddddd" stroke-width="1"/>`,
      `<text x="${x}" y="${MARGIN.top + plotH + 20}" text-anchor="middle">${fmt(tx)}</text>`,
    );
  }
  for (const ty of ticks(yLo, yHi)) {
    const y = coord(sy(ty));
    parts.push(
      `<line x1="${MARGIN.left}" y1="${y}" x2="${MARGIN.left + plotW}" y2="${y}" ` +
        `stroke="#dddddd" stroke-width="1"/>`,
      `<text x="${MARGIN.left - 8}" y="${y}" text-anchor="end" dominant-baseline="middle">` +
        `${fmt(ty)}</text>`,
    );
  }
  parts.push(
    `<rect x="${MARGIN.left}" y="${MARGIN.top}" width="${plotW}" height="${plotH}" ` +
      `fill="none" stroke="#333333"/>`,
  );
  parts.push(
    `<text x="${MARGIN.left + plotW / 2}" y="${HEIGHT - 14}" text-anchor="middle">` +
      `${spec.xLabel}</text>`,
    `<text x="22" y="${MARGIN.top + plotH / 2}" text-anchor="middle" ` +
      `transform="rotate(-90 22 ${MARGIN.top + plotH / 2})">${spec.yLabel}</text>`,
  );

  spec.series.forEach((s, i) => {
    const color = PALETTE[i % PALETTE.length]!;
    const points = s.x
      .map((xv, k) => `${coord(sx(xv))},${coord(sy(s.y[k]!))}`)
      .join(" L");
    parts.push(
      `<path d="M${points}" fill="none" stroke="${color}" stroke-width="1.8" ` +
        `data-label="${s.label}"/>`,
    );
    const ly = MARGIN.top + 14 + i * 20;
    parts.push(
      `<line x1="${WIDTH - MARGIN.right + 12}" y1="${ly}" ` +
        `x2="${WIDTH - MARGIN.right + 40}" y2="${ly}" stroke="${color}" stroke-width="2.5"/>`,
      `<text x="${WIDTH - MARGIN.right + 46}" y="${ly + 5}">${s.label}</text>`,
    );
  });
  parts.push("</svg>");
  return parts.join("\n") + "\n";
}
