/** SVG path builders. Pure functions from payload arrays to path data.
 *
 * Charts plot the bundle's raw arrays directly: no smoothing, no
 * resampling. What the expert sees is exactly what the engine computed.
 * Degenerate inputs (flat bands, single-point ranges) still produce valid
 * paths: a collapsed scale maps everything to the range midpoint.
 */

import type { FeedbackBundle, OverlayCurve } from "./types.js";

export interface Frame {
  width: number;
  height: number;
  margin: { top: number; right: number; bottom: number; left: number };
}

export const DEFAULT_FRAME: Frame = {
  width: 640,
  height: 360,
  margin: { top: 16, right: 16, bottom: 36, left: 52 },
};

export interface Scale {
  (value: number): number;
  domain: [number, number];
  range: [number, number];
}

export function linearScale(domain: [number, number], range: [number, number]): Scale {
  const [d0, d1] = domain;
  const [r0, r1] = range;
  const span = d1 - d0;
  const scale = ((value: number) => {
    if (span === 0) return (r0 + r1) / 2;
    return r0 + ((value - d0) / span) * (r1 - r0);
  }) as Scale;
  scale.domain = domain;
  scale.range = range;
  return scale;
}

function extent(values: number[]): [number, number] {
  let lo = Infinity;
  let hi = -Infinity;
  for (const v of values) {
    if (v < lo) lo = v;
    if (v > hi) hi = v;
  }
  if (!Number.isFinite(lo) || !Number.isFinite(hi)) return [0, 1];
  return [lo, hi];
}

export function innerArea(frame: Frame): { x: [number, number]; y: [number, number] } {
  return {
    x: [frame.margin.left, frame.width - frame.margin.right],
    y: [frame.height - frame.margin.bottom, frame.margin.top],
  };
}

const fmt = (value: number) => (Math.round(value * 100) / 100).toString();

export function linePath(xs: number[], ys: number[], sx: Scale, sy: Scale): string {
  const parts: string[] = [];
  const n = Math.min(xs.length, ys.length);
  for (let i = 0; i < n; i++) {
    parts.push(`${i === 0 ? "M" : "L"}${fmt(sx(xs[i]!))},${fmt(sy(ys[i]!))}`);
  }
  return parts.join("");
}

/** Closed region between two series sharing an x grid (upper out, lower back). */
export function bandPath(
  xs: number[],
  lower: number[],
  upper: number[],
  sx: Scale,
  sy: Scale,
): string {
  if (xs.length === 0) return "";
  const out: string[] = [];
  for (let i = 0; i < xs.length; i++) {
    out.push(`${i === 0 ? "M" : "L"}${fmt(sx(xs[i]!))},${fmt(sy(upper[i]!))}`);
  }
  for (let i = xs.length - 1; i >= 0; i--) {
    out.push(`L${fmt(sx(xs[i]!))},${fmt(sy(lower[i]!))}`);
  }
  return out.join("") + "Z";
}

export interface CdfChart {
  band: string;
  median: string;
  xScale: Scale;
  yScale: Scale;
}

/** The final-feedback chart: pointwise band plus the median CDF. */
export function cdfBandChart(bundle: FeedbackBundle, frame: Frame = DEFAULT_FRAME): CdfChart {
  const area = innerArea(frame);
  const xScale = linearScale(extent(bundle.grid), area.x);
  const yScale = linearScale([0, 1], area.y);
  return {
    band: bandPath(bundle.grid, bundle.cdf_lower, bundle.cdf_upper, xScale, yScale),
    median: linePath(bundle.grid, bundle.cdf_median, xScale, yScale),
    xScale,
    yScale,
  };
}

export interface DensityChart {
  paths: { label: string; d: string }[];
  xScale: Scale;
  yScale: Scale;
}

/** Overlay densities on a shared scale so peak heights stay comparable. */
export function overlayChart(curves: OverlayCurve[], frame: Frame = DEFAULT_FRAME): DensityChart {
  const area = innerArea(frame);
  const allX = curves.flatMap((c) => c.grid);
  const maxDensity = Math.max(0, ...curves.flatMap((c) => c.density));
  const xScale = linearScale(extent(allX), area.x);
  const yScale = linearScale([0, maxDensity || 1], area.y);
  return {
    paths: curves.map((c) => ({ label: c.label, d: linePath(c.grid, c.density, xScale, yScale) })),
    xScale,
    yScale,
  };
}

/** Presentational sketch of a fitted normal density. The numbers shown to
 * the expert (parameters, percentiles) all come from service payloads;
 * this curve only visualizes them. */
export function normalDensitySketch(
  mean: number,
  variance: number,
  lower: number,
  upper: number,
  points = 200,
): { grid: number[]; density: number[] } {
  const sd = Math.sqrt(variance);
  const grid: number[] = [];
  const density: number[] = [];
  for (let i = 0; i < points; i++) {
    const x = lower + ((upper - lower) * i) / (points - 1);
    const z = (x - mean) / sd;
    grid.push(x);
    density.push(Math.exp(-0.5 * z * z) / (sd * Math.sqrt(2 * Math.PI)));
  }
  return { grid, density };
}

export interface ShadedChart {
  curve: string;
  shade: string;
  xScale: Scale;
  yScale: Scale;
}

/** Proportion-question explainer: density with the [k1, k2] region shaded. */
export function shadedProportionChart(
  mean: number,
  variance: number,
  interval: [number, number],
  bounds: [number, number],
  frame: Frame = DEFAULT_FRAME,
): ShadedChart {
  const { grid, density } = normalDensitySketch(mean, variance, bounds[0], bounds[1]);
  const area = innerArea(frame);
  const xScale = linearScale(extent(grid), area.x);
  const yScale = linearScale([0, Math.max(...density) || 1], area.y);
  const insideX: number[] = [];
  const insideY: number[] = [];
  for (let i = 0; i < grid.length; i++) {
    const x = grid[i]!;
    if (x >= interval[0] && x <= interval[1]) {
      insideX.push(x);
      insideY.push(density[i]!);
    }
  }
  return {
    curve: linePath(grid, density, xScale, yScale),
    shade: insideX.length > 0
      ? bandPath(insideX, insideX.map(() => 0), insideY, xScale, yScale)
      : "",
    xScale,
    yScale,
  };
}

export function axisTicks(scale: Scale, count = 5): { value: number; position: number }[] {
  const [d0, d1] = scale.domain;
  const ticks: { value: number; position: number }[] = [];
  for (let i = 0; i < count; i++) {
    const value = d0 + ((d1 - d0) * i) / (count - 1);
    ticks.push({ value, position: scale(value) });
  }
  return ticks;
}
