/** Client-side mirrors of the engine's judgement invariants.
 *
 * These exist purely for instant inline feedback; the server re-validates
 * everything. Messages name the violated requirement, matching the field
 * they sit beside. A return of null means "would be accepted".
 */

import type { QuantilePair, TransformTag } from "./types.js";

const SUPPORT: Record<TransformTag, [number, number]> = {
  identity: [-Infinity, Infinity],
  log: [0, Infinity],
  logit: [0, 1],
};

export const ROBUST_THETA_BAND: [number, number] = [0.2, 0.45];

export function validateBounds(
  lower: number,
  upper: number,
  transform: TransformTag,
): string | null {
  if (!Number.isFinite(lower) || !Number.isFinite(upper)) {
    return "both bounds must be numbers";
  }
  if (!(lower < upper)) {
    return "the lower bound must be strictly below the upper bound";
  }
  const [lo, hi] = SUPPORT[transform];
  if (!(lower > lo && upper < hi)) {
    return `bounds must lie inside the ${transform} transform's support (${lo}, ${hi})`;
  }
  return null;
}

export function validateMeanQuantiles(
  quantiles: QuantilePair[],
  lower: number,
  upper: number,
): string | null {
  if (quantiles.length < 2) {
    return "at least two quantile judgements are required";
  }
  const sorted = [...quantiles].sort((a, b) => a.alpha - b.alpha);
  for (const q of sorted) {
    if (!Number.isFinite(q.alpha) || !(q.alpha > 0 && q.alpha < 1)) {
      return "quantile levels must lie strictly between 0 and 1";
    }
    if (!Number.isFinite(q.value)) {
      return "quantile values must be numbers";
    }
    if (!(q.value > lower && q.value < upper)) {
      return `value ${q.value} must lie inside the plausible bounds (${lower}, ${upper})`;
    }
  }
  for (let i = 1; i < sorted.length; i++) {
    const prev = sorted[i - 1]!;
    const next = sorted[i]!;
    if (!(prev.alpha < next.alpha)) {
      return "quantile levels must all differ";
    }
    if (!(prev.value < next.value)) {
      return "quantile values must increase with the level";
    }
  }
  return null;
}

/** Accepts a proportion on the 0-0.5 scale or a bare percentage in [1, 50).
 * Values in [0.5, 1) are ambiguous and rejected, like the server does. */
export function normalizeTheta(raw: number): number | null {
  if (!Number.isFinite(raw) || raw <= 0) return null;
  let value = raw;
  if (value >= 1) {
    if (value >= 50) return null;
    value = value / 100;
  }
  return value < 0.5 ? value : null;
}

export function validateProportions(thetaLoRaw: number, thetaHiRaw: number): string | null {
  const lo = normalizeTheta(thetaLoRaw);
  const hi = normalizeTheta(thetaHiRaw);
  if (lo === null || hi === null) {
    return "each proportion must lie strictly between 0 and 0.5 (or be a percentage below 50)";
  }
  if (!(lo < hi)) {
    return "the 5th percentile must be below the 95th percentile";
  }
  return null;
}

export function validateWidth(width: number | undefined): string | null {
  if (width === undefined) return null; // server will suggest one
  if (!Number.isFinite(width) || !(width > 0)) {
    return "the interval width must be a positive number";
  }
  return null;
}

/** True when a theta sits where log(sigma) reacts least to imprecision. */
export function inRobustBand(theta: number): boolean {
  return theta >= ROBUST_THETA_BAND[0] && theta <= ROBUST_THETA_BAND[1];
}
