/** Point-cloud scene model built from a field payload. */

import { colorForValue, colormapByName, cssColor } from "./colors.js";
import type { FieldPayload } from "./types.js";

export interface VertexLabel {
  label: "TP" | "FN" | "FP" | "TN";
  xyz: [number, number, number];
}

export class CloudScene {
  readonly payload: FieldPayload;
  readonly count: number;
  readonly xyz: Float64Array;
  /** CSS color strings per point (precomputed; rendering is a tight loop). */
  readonly colors: string[];
  /** indices of points on the tetrahedron edges (>= 2 zero counts) */
  readonly skeletonIndex: number[];

  constructor(payload: FieldPayload, colormapName = "diverging") {
    this.payload = payload;
    this.count = payload.points.length;
    this.xyz = Float64Array.from(payload.xyz);
    const spec = colormapByName(colormapName);
    this.colors = payload.values.map((v) =>
      cssColor(colorForValue(v, payload.gamut, spec)));
    this.skeletonIndex = [];
    for (let i = 0; i < this.count; i++) {
      const p = payload.points[i];
      let zeros = 0;
      for (let j = 0; j < 4; j++) if (p[j] === 0) zeros++;
      if (zeros >= 2) this.skeletonIndex.push(i);
    }
  }

  value(index: number): number | null {
    return this.payload.values[index];
  }

  counts(index: number): number[] {
    return this.payload.points[index];
  }

  /** Tooltip payload for a picked point; values verbatim from the API. */
  inspect(index: number): { tp: number; fn: number; fp: number; tn: number;
                            value: number | null } {
    const [tp, fn, fp, tn] = this.payload.points[index];
    return { tp, fn, fp, tn, value: this.payload.values[index] };
  }

  vertexLabels(): VertexLabel[] {
    const v = this.payload.vertices;
    return [
      { label: "TP", xyz: v.tp as [number, number, number] },
      { label: "FN", xyz: v.fn as [number, number, number] },
      { label: "FP", xyz: v.fp as [number, number, number] },
      { label: "TN", xyz: v.tn as [number, number, number] },
    ];
  }

  /**
   * Corners of the indicator plane for the slice tp+fn = f*n: the
   * intersection of that plane with the tetrahedron, a quadrilateral with
   * corners on the TP-FP, TP-TN, FN-TN and FN-FP edges.
   */
  slicePlaneCorners(fraction: number): Array<[number, number, number]> {
    const v = this.payload.vertices;
    const mix = (a: number[], b: number[]): [number, number, number] => [
      fraction * a[0] + (1 - fraction) * b[0],
      fraction * a[1] + (1 - fraction) * b[1],
      fraction * a[2] + (1 - fraction) * b[2],
    ];
    return [mix(v.tp, v.fp), mix(v.tp, v.tn), mix(v.fn, v.tn), mix(v.fn, v.fp)];
  }
}

/** Painter's order: far points first, using projected depth. */
export function depthOrder(projected: Float32Array, indices: number[]): number[] {
  return [...indices].sort((a, b) => projected[3 * a + 2] - projected[3 * b + 2]);
}
