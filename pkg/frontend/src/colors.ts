/**
 * Consistency encoding for the projection-axis view: gray for items
 * whose ranking and projection agree, blue for positive inverse
 * ordinals (projection flatters), orange-red for negative ones; the
 * darker the color the larger the magnitude.
 */

export const GRAY = "#9aa0a6";

const BLUE_LIGHT: Rgb = { r: 158, g: 202, b: 235 };
const BLUE_DARK: Rgb = { r: 8, g: 48, b: 107 };
const ORANGE_RED_LIGHT: Rgb = { r: 253, g: 190, b: 133 };
const ORANGE_RED_DARK: Rgb = { r: 166, g: 15, b: 20 };

interface Rgb {
  r: number;
  g: number;
  b: number;
}

function mix(a: Rgb, b: Rgb, t: number): string {
  const ch = (x: number, y: number) => Math.round(x + (y - x) * t);
  return `rgb(${ch(a.r, b.r)}, ${ch(a.g, b.g)}, ${ch(a.b, b.b)})`;
}

/** Perceived darkness, used to assert/provide monotone shading. */
export function darkness(color: string): number {
  const m = color.match(/rgb\((\d+), (\d+), (\d+)\)/);
  if (!m) return 0;
  const [r, g, b] = [Number(m[1]), Number(m[2]), Number(m[3])];
  return 255 - (0.299 * r + 0.587 * g + 0.114 * b);
}

export function consistencyColor(inverseOrdinal: number, maxMagnitude: number): string {
  if (inverseOrdinal === 0) return GRAY;
  const t = Math.min(Math.abs(inverseOrdinal) / Math.max(maxMagnitude, 1), 1);
  return inverseOrdinal > 0
    ? mix(BLUE_LIGHT, BLUE_DARK, t)
    : mix(ORANGE_RED_LIGHT, ORANGE_RED_DARK, t);
}

export function colorFamily(inverseOrdinal: number): "gray" | "blue" | "orange-red" {
  if (inverseOrdinal === 0) return "gray";
  return inverseOrdinal > 0 ? "blue" : "orange-red";
}

/** Signed attribute-difference shading for the comparison matrix:
 * positive (other item larger) runs blue, negative orange-red. */
export function diffColor(diff: number, maxAbs: number): string {
  if (diff === 0) return "#f2f2f2";
  const t = Math.min(Math.abs(diff) / Math.max(maxAbs, 1e-12), 1);
  return diff > 0 ? mix(BLUE_LIGHT, BLUE_DARK, t) : mix(ORANGE_RED_LIGHT, ORANGE_RED_DARK, t);
}
