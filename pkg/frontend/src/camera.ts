/** Orbit camera with orthographic projection onto a canvas viewport. */

export class OrbitCamera {
  yaw: number;
  pitch: number;
  zoom: number;

  constructor(yaw = 0.65, pitch = 0.35, zoom = 1.0) {
    this.yaw = yaw;
    this.pitch = pitch;
    this.zoom = zoom;
  }

  rotate(dYaw: number, dPitch: number): void {
    this.yaw += dYaw;
    const limit = Math.PI / 2 - 0.01;
    this.pitch = Math.min(limit, Math.max(-limit, this.pitch + dPitch));
  }

  zoomBy(factor: number): void {
    this.zoom = Math.min(20, Math.max(0.05, this.zoom * factor));
  }

  /** Row-major 3x3 rotation: Rx(pitch) * Ry(yaw). */
  rotationMatrix(): Float64Array {
    const cy = Math.cos(this.yaw), sy = Math.sin(this.yaw);
    const cp = Math.cos(this.pitch), sp = Math.sin(this.pitch);
    return new Float64Array([
      cy, 0, sy,
      sp * sy, cp, -sp * cy,
      -cp * sy, sp, cp * cy,
    ]);
  }

  /**
   * Project flat xyz triples into screen space.  Writes (x, y, depth) per
   * point into `out` (length 3N) and returns the scale used.
   */
  project(xyz: ArrayLike<number>, out: Float32Array,
          width: number, height: number): number {
    const m = this.rotationMatrix();
    const scale = this.zoom * Math.min(width, height) * 0.38;
    const cx = width / 2;
    const cy = height / 2;
    const count = Math.floor(xyz.length / 3);
    for (let i = 0; i < count; i++) {
      const x = xyz[3 * i], y = xyz[3 * i + 1], z = xyz[3 * i + 2];
      const rx = m[0] * x + m[1] * y + m[2] * z;
      const ry = m[3] * x + m[4] * y + m[5] * z;
      const rz = m[6] * x + m[7] * y + m[8] * z;
      out[3 * i] = cx + scale * rx;
      out[3 * i + 1] = cy - scale * ry;
      out[3 * i + 2] = rz;
    }
    return scale;
  }
}

/** Index of the nearest projected point within `radius` pixels, or -1.
 * When `indices` is given, only those points are candidates. */
export function pickNearest(projected: Float32Array, count: number,
                            x: number, y: number, radius: number,
                            indices?: ArrayLike<number>): number {
  let best = -1;
  let bestD = radius * radius;
  const total = indices ? indices.length : count;
  for (let k = 0; k < total; k++) {
    const i = indices ? (indices[k] as number) : k;
    const dx = projected[3 * i] - x;
    const dy = projected[3 * i + 1] - y;
    const d = dx * dx + dy * dy;
    if (d <= bestD) {
      bestD = d;
      best = i;
    }
  }
  return best;
}
