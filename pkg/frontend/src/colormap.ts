/** Blue → violet → yellow → white heat palette with linear interpolation
 * between fixed stops; hotness is strictly monotone in brightness. */

export interface Rgb {
  r: number;
  g: number;
  b: number;
}

interface Stop {
  at: number;
  color: Rgb;
}

const STOPS: Stop[] = [
  { at: 0.0, color: { r: 0, g: 0, b: 255 } }, // blue
  { at: 0.4, color: { r: 138, g: 43, b: 226 } }, // violet
  { at: 0.8, color: { r: 255, g: 255, b: 0 } }, // yellow
  { at: 1.0, color: { r: 255, g: 255, b: 255 } }, // white
];

/** Position along the stop sequence in [0, STOPS.length - 1]; the scalar
 * "how hot" ordering the palette is interpolated over. */
export function hotness(brightness: number): number {
  const b = Math.min(1, Math.max(0, brightness));
  for (let k = 0; k < STOPS.length - 1; k++) {
    const lo = STOPS[k];
    const hi = STOPS[k + 1];
    if (b <= hi.at) {
      return k + (b - lo.at) / (hi.at - lo.at);
    }
  }
  return STOPS.length - 1;
}

export function heatColor(brightness: number): Rgb {
  const t = hotness(brightness);
  const k = Math.min(STOPS.length - 2, Math.floor(t));
  const frac = t - k;
  const lo = STOPS[k].color;
  const hi = STOPS[k + 1].color;
  return {
    r: Math.round(lo.r + (hi.r - lo.r) * frac),
    g: Math.round(lo.g + (hi.g - lo.g) * frac),
    b: Math.round(lo.b + (hi.b - lo.b) * frac),
  };
}

export function heatCss(brightness: number, alpha = 1): string {
  const { r, g, b } = heatColor(brightness);
  return `rgba(${r}, ${g}, ${b}, ${alpha})`;
}
