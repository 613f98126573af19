/** Local mirror of the service's paint-brush rule.
 *
 * Must accumulate bit-for-bit identically to the server core on the same
 * event sequence, so every arithmetic step keeps the exact same order of
 * IEEE-double operations: d = sqrt(dx*dx + dy*dy), falloff = 1 - d/R,
 * value = min(1, old + ticks*delta*falloff).
 */

export const BRUSH_RADIUS = 12.0;
export const BRUSH_DELTA = 0.08;

/** Sparse brightness field keyed "i,j"; absent pixels are 0. */
export type SparseField = Map<string, number>;

export function pixelKey(i: number, j: number): string {
  return `${i},${j}`;
}

export function applyBrush(
  field: SparseField,
  cx: number,
  cy: number,
  ticks: number,
  width: number,
  height: number,
  radius: number = BRUSH_RADIUS,
  delta: number = BRUSH_DELTA,
): SparseField {
  if (!(cx >= 0 && cx <= width && cy >= 0 && cy <= height)) {
    throw new RangeError(`brush center (${cx}, ${cy}) outside map bounds`);
  }
  if (!Number.isInteger(ticks) || ticks < 1) {
    throw new RangeError("ticks must be a positive integer");
  }
  const out = new Map(field);
  const iLo = Math.max(0, Math.floor(cx - radius));
  const iHi = Math.min(width - 1, Math.ceil(cx + radius));
  const jLo = Math.max(0, Math.floor(cy - radius));
  const jHi = Math.min(height - 1, Math.ceil(cy + radius));
  for (let i = iLo; i <= iHi; i++) {
    for (let j = jLo; j <= jHi; j++) {
      const dx = i + 0.5 - cx;
      const dy = j + 0.5 - cy;
      const d = Math.sqrt(dx * dx + dy * dy);
      if (d >= radius) continue;
      const falloff = 1.0 - d / radius;
      const key = pixelKey(i, j);
      const value = Math.min(1.0, (out.get(key) ?? 0.0) + ticks * delta * falloff);
      if (value > 0.0) out.set(key, value);
    }
  }
  return out;
}
