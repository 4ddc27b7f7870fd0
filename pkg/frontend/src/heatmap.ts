/** Slice heatmap model: raster lookup with ROC-like axis orientation. */

import { colorForValue, colormapByName, cssColor } from "./colors.js";
import type { SlicePayload } from "./types.js";

export class HeatmapModel {
  readonly payload: SlicePayload;
  readonly rows: number;  // TNR steps, row 0 = TNR 0 (drawn at the bottom)
  readonly cols: number;  // TPR steps

  constructor(payload: SlicePayload) {
    this.payload = payload;
    this.rows = payload.tnr_steps.length;
    this.cols = payload.tpr_steps.length;
  }

  value(row: number, col: number): number | null {
    return this.payload.values[row * this.cols + col];
  }

  color(row: number, col: number, colormapName = "diverging"): string {
    return cssColor(colorForValue(
      this.value(row, col), this.payload.gamut, colormapByName(colormapName)));
  }

  /**
   * Map a pixel in a w x h canvas to (row, col); TNR increases upward,
   * so the top pixel row is the highest TNR row of the raster.
   */
  cellAt(px: number, py: number, width: number, height: number):
      { row: number; col: number } | null {
    if (px < 0 || py < 0 || px >= width || py >= height) return null;
    const col = Math.min(this.cols - 1, Math.floor((px / width) * this.cols));
    const fromTop = Math.min(this.rows - 1, Math.floor((py / height) * this.rows));
    return { row: this.rows - 1 - fromTop, col };
  }

  /** Counts of the confusion matrix behind one cell. */
  cellCounts(row: number, col: number): { tp: number; fn: number; fp: number; tn: number } {
    const p = this.payload.pos_count;
    const neg = this.payload.n - p;
    const tp = this.cols === 1 ? 0 : col;
    const tn = this.rows === 1 ? 0 : row;
    return { tp, fn: p - tp, fp: neg - tn, tn };
  }
}
