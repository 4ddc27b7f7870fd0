/** Synthetic API payloads for tests: the test doubles as the server. */

import type { FieldPayload, SlicePayload } from "../src/types.js";

const S = 1 / Math.sqrt(3);

export const VERTICES = {
  tp: [S, S, S],
  fn: [S, -S, -S],
  fp: [-S, S, -S],
  tn: [-S, -S, S],
};

/** Lexicographic enumeration (tp major, then fn, then fp), like the server. */
export function enumerateCounts(n: number): number[][] {
  const out: number[][] = [];
  for (let tp = 0; tp <= n; tp++) {
    for (let fn = 0; fn <= n - tp; fn++) {
      for (let fp = 0; fp <= n - tp - fn; fp++) {
        out.push([tp, fn, fp, n - tp - fn - fp]);
      }
    }
  }
  return out;
}

function embed(points: number[][], n: number): number[] {
  const xyz: number[] = [];
  const v = [VERTICES.tp, VERTICES.fn, VERTICES.fp, VERTICES.tn];
  for (const p of points) {
    for (let axis = 0; axis < 3; axis++) {
      let coordinate = 0;
      for (let corner = 0; corner < 4; corner++) {
        coordinate += (p[corner] / n) * v[corner][axis];
      }
      xyz.push(coordinate);
    }
  }
  return xyz;
}

/** Accuracy field payload at resolution n, matching the wire format. */
export function accuracyFieldPayload(n: number): FieldPayload {
  const points = enumerateCounts(n);
  const values = points.map((p) => (p[0] + p[3]) / n);
  return {
    measure: "accuracy",
    params: {},
    n,
    vertices: VERTICES,
    points,
    xyz: embed(points, n),
    values,
    gamut: { min: 0, max: 1, undefined: 0 },
  };
}

/** Precision-like payload with nulls along the tp=fp=0 edge. */
export function precisionFieldPayload(n: number): FieldPayload {
  const points = enumerateCounts(n);
  const values = points.map((p) =>
    p[0] + p[2] === 0 ? null : p[0] / (p[0] + p[2]));
  return {
    measure: "precision",
    params: {},
    n,
    vertices: VERTICES,
    points,
    xyz: embed(points, n),
    values,
    gamut: { min: 0, max: 1, undefined: values.filter((v) => v === null).length },
  };
}

/** Recall slice payload (constant along TNR) at P = f*n. */
export function recallSlicePayload(n: number, posCount: number): SlicePayload {
  const rows = n - posCount + 1;
  const cols = posCount + 1;
  const tprSteps = Array.from({ length: cols }, (_, c) => c / posCount);
  const tnrSteps = Array.from({ length: rows }, (_, r) => r / (n - posCount));
  const values: (number | null)[] = [];
  for (let r = 0; r < rows; r++) {
    for (let c = 0; c < cols; c++) values.push(tprSteps[c]);
  }
  return {
    measure: "recall",
    params: {},
    n,
    pos_fraction: posCount / n,
    pos_count: posCount,
    tpr_steps: tprSteps,
    tnr_steps: tnrSteps,
    values,
    gamut: { min: 0, max: 1, undefined: 0 },
  };
}

export interface FakeResponse {
  ok: boolean;
  status: number;
  json(): Promise<unknown>;
}

export function jsonResponse(payload: unknown, status = 200): FakeResponse {
  return {
    ok: status >= 200 && status < 300,
    status,
    json: () => Promise.resolve(payload),
  };
}
