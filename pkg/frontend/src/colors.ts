/** Client-side color scales.
 *
 * Colors are presentation only; every numeric value displayed to the user
 * is taken verbatim from the API payload.  The diverging map mirrors the
 * server's default (blue-white-red, mid-gray sentinel for Undefined).
 */

import type { GamutInfo } from "./types.js";

export type Rgb = [number, number, number];

export interface ColormapSpec {
  stops: Array<[number, Rgb]>;
  sentinel: Rgb;
}

export const COLORMAPS: Record<string, ColormapSpec> = {
  diverging: {
    stops: [
      [0.0, [59, 76, 192]],
      [0.5, [255, 255, 255]],
      [1.0, [180, 4, 38]],
    ],
    sentinel: [128, 128, 128],
  },
  grayscale: {
    stops: [
      [0.0, [20, 20, 20]],
      [1.0, [245, 245, 245]],
    ],
    sentinel: [255, 80, 80],
  },
};

export function colormapByName(name: string): ColormapSpec {
  return COLORMAPS[name] ?? COLORMAPS.diverging;
}

/** Piecewise-linear interpolation through the stops at t in [0, 1]. */
export function sampleColormap(spec: ColormapSpec, t: number): Rgb {
  const clamped = Math.min(1, Math.max(0, t));
  const stops = spec.stops;
  for (let i = 1; i < stops.length; i++) {
    const [p0, c0] = stops[i - 1];
    const [p1, c1] = stops[i];
    if (clamped <= p1) {
      const u = p1 === p0 ? 0 : (clamped - p0) / (p1 - p0);
      return [
        Math.round(c0[0] + u * (c1[0] - c0[0])),
        Math.round(c0[1] + u * (c1[1] - c0[1])),
        Math.round(c0[2] + u * (c1[2] - c0[2])),
      ];
    }
  }
  return stops[stops.length - 1][1];
}

/** Color for a payload value: sentinel for null, gamut-normalized otherwise. */
export function colorForValue(value: number | null, gamut: GamutInfo,
                              spec: ColormapSpec): Rgb {
  if (value === null || gamut.min === null || gamut.max === null) {
    return spec.sentinel;
  }
  const span = gamut.max - gamut.min;
  const t = span > 0 ? (value - gamut.min) / span : 0.5;
  return sampleColormap(spec, t);
}

export function cssColor(rgb: Rgb): string {
  return `rgb(${rgb[0]},${rgb[1]},${rgb[2]})`;
}
