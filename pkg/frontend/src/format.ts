/** Display formatting.
 *
 * Fitted parameters are shown digit-exact: String(x) on a JSON-parsed
 * double reproduces the shortest round-trip form, which is the same
 * convention the service uses to emit it. Rounding is reserved for axis
 * labels and narrative summaries, never for fitted values.
 */

export function exact(value: number): string {
  // the engine prints whole floats with a trailing .0; render the same token
  if (Number.isInteger(value) && Math.abs(value) < 1e15) return `${value}.0`;
  return String(value);
}

export function approx(value: number, digits = 2): string {
  return value.toFixed(digits);
}

export function nearestMinute(value: number): string {
  return String(Math.round(value));
}

export function percent(value: number): string {
  return `${(value * 100).toFixed(0)}%`;
}
