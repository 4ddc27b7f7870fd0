/** View state defaults, fraction snapping, and URL (de)serialization. */

import type { ViewKind, ViewState } from "./types.js";

export const DEFAULT_STATE: ViewState = {
  measure: "accuracy",
  params: {},
  n: 60,
  view: "cloud",
  fraction: 0.5,
  yaw: 0.65,
  pitch: 0.35,
  zoom: 1.0,
  colormap: "diverging",
  compare: null,
};

/**
 * Snap a requested positive fraction to the nearest realizable value at
 * resolution n (an integer count of positives).  Every request built from
 * a snapped fraction is realizable by construction.
 */
export function snapFraction(fraction: number, n: number): number {
  if (!Number.isFinite(fraction)) return 0.5;
  const clamped = Math.min(1, Math.max(0, fraction));
  return Math.round(clamped * n) / n;
}

export function isRealizableFraction(fraction: number, n: number): boolean {
  return Math.abs(fraction * n - Math.round(fraction * n)) <= 1e-9;
}

const VIEWS: ViewKind[] = ["cloud", "skeleton", "slice"];

/** Serialize to a hash fragment (no leading '#'). Full float precision. */
export function encodeState(state: ViewState): string {
  const parts: string[] = [];
  const put = (k: string, v: string | number) =>
    parts.push(`${k}=${encodeURIComponent(String(v))}`);
  put("measure", state.measure);
  put("n", state.n);
  put("view", state.view);
  put("f", state.fraction);
  put("yaw", state.yaw);
  put("pitch", state.pitch);
  put("zoom", state.zoom);
  put("cmap", state.colormap);
  if (state.compare) put("compare", state.compare);
  for (const name of Object.keys(state.params).sort()) {
    put(`p.${name}`, state.params[name]);
  }
  return parts.join("&");
}

/** Parse a hash fragment, falling back to defaults for missing pieces. */
export function decodeState(hash: string, defaults: ViewState = DEFAULT_STATE): ViewState {
  const state: ViewState = { ...defaults, params: { ...defaults.params } };
  const text = hash.startsWith("#") ? hash.slice(1) : hash;
  if (!text) return state;
  for (const part of text.split("&")) {
    const eq = part.indexOf("=");
    if (eq < 0) continue;
    const key = decodeURIComponent(part.slice(0, eq));
    const raw = decodeURIComponent(part.slice(eq + 1));
    const num = Number(raw);
    if (key === "measure") state.measure = raw;
    else if (key === "n" && Number.isInteger(num) && num >= 1) state.n = num;
    else if (key === "view" && VIEWS.includes(raw as ViewKind)) state.view = raw as ViewKind;
    else if (key === "f" && Number.isFinite(num)) state.fraction = num;
    else if (key === "yaw" && Number.isFinite(num)) state.yaw = num;
    else if (key === "pitch" && Number.isFinite(num)) state.pitch = num;
    else if (key === "zoom" && Number.isFinite(num) && num > 0) state.zoom = num;
    else if (key === "cmap") state.colormap = raw;
    else if (key === "compare") state.compare = raw || null;
    else if (key.startsWith("p.") && Number.isFinite(num)) state.params[key.slice(2)] = num;
  }
  // never carry an unrealizable fraction into requests
  state.fraction = snapFraction(state.fraction, state.n);
  return state;
}
