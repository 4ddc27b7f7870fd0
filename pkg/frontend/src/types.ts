/** Wire types of the JSON API and the viewer's own state. */

export interface ParamDescriptor {
  name: string;
  default: number;
  lo: number | null;
  hi: number | null;
  lo_open: boolean;
  hi_open: boolean;
}

export interface MeasureEntry {
  id: string;
  name: string;
  formula: string;
  params: ParamDescriptor[];
  range: [number, number];
}

export interface GamutInfo {
  min: number | null;
  max: number | null;
  undefined: number;
}

export interface FieldPayload {
  measure: string;
  params: Record<string, number>;
  n: number;
  vertices: { tp: number[]; fn: number[]; fp: number[]; tn: number[] };
  points: number[][];          // [tp, fn, fp, tn] per grid point
  xyz: number[];               // flat, 3 per point
  values: (number | null)[];   // null = Undefined
  gamut: GamutInfo;
}

export interface SlicePayload {
  measure: string;
  params: Record<string, number>;
  n: number;
  pos_fraction: number;
  pos_count: number;
  tpr_steps: (number | null)[];
  tnr_steps: (number | null)[];
  values: (number | null)[];   // row-major, TNR rows ascending
  gamut: GamutInfo;
}

export interface PropsCell {
  verdict: string;
  violations: number;
  undefined_skipped: number;
  definedness_violations: number;
}

export interface PropsRow {
  measure: string;
  monotonicity: PropsCell;
  class_swap_symmetry: PropsCell;
  error_type_symmetry: PropsCell;
  undefined_points: number | null;
}

export interface PropsPayload {
  n: number;
  rows: PropsRow[];
}

export interface ThresholdPayload {
  measure: string;
  param: string;
  property: string;
  lo: number;
  hi: number;
  estimate: number;
  tol: number;
  n: number;
}

export type ViewKind = "cloud" | "skeleton" | "slice";

/** Everything needed to reproduce a view; round-trips through the URL hash. */
export interface ViewState {
  measure: string;
  params: Record<string, number>;
  n: number;
  view: ViewKind;
  fraction: number;            // slice positive fraction, always snapped
  yaw: number;
  pitch: number;
  zoom: number;
  colormap: string;
  compare: string | null;      // optional second panel
}
