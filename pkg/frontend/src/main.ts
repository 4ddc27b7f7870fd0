/** Browser entry point: wires the API client, camera and scene models to
 * the DOM.  All numeric readouts come verbatim from API payloads; the
 * client never recomputes a measure.
 */

import { ApiClient } from "./api.js";
import { OrbitCamera, pickNearest } from "./camera.js";
import { CloudScene, depthOrder } from "./cloud.js";
import { debounce } from "./debounce.js";
import { HeatmapModel } from "./heatmap.js";
import { DEFAULT_STATE, decodeState, encodeState, snapFraction } from "./state.js";
import type { MeasureEntry, PropsRow, ViewState } from "./types.js";

const SLIDER_DEBOUNCE_MS = 150;
const PROPS_N = 16;

interface ThresholdHint {
  param: string;
  property: string;
  lo: number;
  hi: number;
}

// measures whose slider gets a computed property-flip marker; endpoints
// that reject (isolated-point properties) silently degrade to slider-only
const THRESHOLD_HINTS: Record<string, ThresholdHint> = {
  iba_gmean: { param: "alpha", property: "monotonicity", lo: 0, hi: 2 },
  f_beta: { param: "beta", property: "error_type_symmetry", lo: 0.5, hi: 1.0 },
  weighted_accuracy: { param: "w", property: "class_swap_symmetry", lo: 0.3, hi: 0.7 },
};

// cross-origin development: /index.html?api=http://localhost:8000
const API_BASE = new URLSearchParams(window.location.search).get("api") ?? "";
const api = new ApiClient(API_BASE);
const state: ViewState = decodeState(window.location.hash, DEFAULT_STATE);
const camera = new OrbitCamera(state.yaw, state.pitch, state.zoom);

let measures: MeasureEntry[] = [];
let scene: CloudScene | null = null;
let compareScene: CloudScene | null = null;
let heatmap: HeatmapModel | null = null;
let propsRow: PropsRow | null = null;
let thresholdEstimate: number | null = null;

// ---------------------------------------------------------------------------
// DOM scaffold
// ---------------------------------------------------------------------------

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K, attrs: Record<string, string> = {}, parent?: HTMLElement,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [k, v] of Object.entries(attrs)) node.setAttribute(k, v);
  if (parent) parent.appendChild(node);
  return node;
}

document.body.innerHTML = "";
const root = el("div", { id: "app" }, document.body);
const aside = el("aside", { id: "controls" }, root);
const mainArea = el("main", { id: "view" }, root);

el("h1", {}, aside).textContent = "tetrametrics viewer";
const banner = el("div", { id: "banner", hidden: "hidden" }, mainArea);

const measureLabel = el("label", {}, aside);
measureLabel.textContent = "measure ";
const measureSelect = el("select", { id: "measure" }, measureLabel);

const compareLabel = el("label", {}, aside);
compareLabel.textContent = "compare ";
const compareSelect = el("select", { id: "compare" }, compareLabel);

const nLabel = el("label", {}, aside);
nLabel.textContent = "resolution n ";
const nSlider = el("input", {
  type: "range", min: "1", max: "100", step: "1", id: "n-slider",
}, nLabel);
const nReadout = el("span", { id: "n-readout" }, nLabel);

const viewBar = el("div", { id: "view-toggle" }, aside);
const viewButtons: Record<string, HTMLButtonElement> = {};
for (const kind of ["cloud", "skeleton", "slice"] as const) {
  const btn = el("button", { "data-view": kind }, viewBar);
  btn.textContent = kind;
  btn.addEventListener("click", () => {
    state.view = kind;
    syncUrl();
    refreshVisibility();
    if (kind === "slice" && heatmap === null) void refreshSlice();
    render();
  });
  viewButtons[kind] = btn;
}

const paramBox = el("div", { id: "param-sliders" }, aside);
const sliceBox = el("div", { id: "slice-control" }, aside);
const badgeBox = el("div", { id: "badges" }, aside);
const infoBox = el("div", { id: "gamut-info" }, aside);

const panelBox = el("div", { id: "panels" }, mainArea);
const canvas = el("canvas", { id: "main-canvas", width: "640", height: "520" }, panelBox);
const compareCanvas = el("canvas", {
  id: "compare-canvas", width: "640", height: "520", hidden: "hidden",
}, panelBox);
const sliceCanvas = el("canvas", {
  id: "slice-canvas", width: "420", height: "420", hidden: "hidden",
}, mainArea);
const tooltip = el("div", { id: "tooltip", hidden: "hidden" }, document.body);

const style = el("style", {}, document.head);
style.textContent = `
  body { margin: 0; font: 13px system-ui, sans-serif; background: #16181d; color: #e8e8e8; }
  #app { display: flex; min-height: 100vh; }
  #controls { width: 250px; padding: 12px; background: #1f2229; display: flex;
              flex-direction: column; gap: 10px; }
  #controls h1 { font-size: 15px; margin: 0 0 6px; }
  #controls label { display: flex; flex-direction: column; gap: 3px; }
  #view { flex: 1; padding: 10px; position: relative; }
  #panels { display: flex; gap: 8px; flex-wrap: wrap; }
  canvas { background: #0d0e12; border-radius: 6px; cursor: grab; }
  #slice-canvas { margin-top: 10px; cursor: crosshair; }
  #view-toggle button { margin-right: 4px; padding: 3px 10px; background: #2b2f3a;
    color: inherit; border: 1px solid #444; border-radius: 4px; cursor: pointer; }
  #view-toggle button.active { background: #3d6fd9; border-color: #3d6fd9; }
  #tooltip { position: fixed; pointer-events: none; background: #000c;
    padding: 6px 8px; border-radius: 4px; font-size: 12px; z-index: 10; }
  #banner { background: #7a2626; padding: 6px 10px; border-radius: 4px;
    margin-bottom: 8px; }
  #banner button { margin-left: 10px; }
  .badge { display: inline-block; margin: 2px 4px 2px 0; padding: 2px 8px;
    border-radius: 10px; font-size: 11px; background: #333; }
  .badge.holds { background: #1e6b3a; }
  .badge.fails { background: #8a2d2d; }
  .slider-track { position: relative; }
  .threshold-marker { position: absolute; top: -3px; width: 2px; height: 14px;
    background: #ffd54a; }
  .snap-hint { color: #ffd54a; font-size: 11px; min-height: 14px; }
`;

// ---------------------------------------------------------------------------
// state / URL sync
// ---------------------------------------------------------------------------

function syncUrl(): void {
  state.yaw = camera.yaw;
  state.pitch = camera.pitch;
  state.zoom = camera.zoom;
  history.replaceState(null, "", "#" + encodeState(state));
}

function showError(message: string, retry: () => void): void {
  banner.hidden = false;
  banner.textContent = message;
  const btn = el("button", {}, banner);
  btn.textContent = "retry";
  btn.addEventListener("click", () => {
    banner.hidden = true;
    retry();
  });
}

// ---------------------------------------------------------------------------
// data refresh
// ---------------------------------------------------------------------------

async function refreshField(): Promise<void> {
  try {
    const payload = await api.field(state);
    if (payload === null) return; // superseded by a newer request
    scene = new CloudScene(payload, state.colormap);
    banner.hidden = true;
    updateInfo();
    render();
  } catch (err) {
    showError(`field request failed: ${(err as Error).message}`, () => void refreshField());
  }
}

async function refreshCompare(): Promise<void> {
  if (!state.compare) {
    compareScene = null;
    compareCanvas.hidden = true;
    return;
  }
  try {
    const payload = await api.field(
      { ...state, measure: state.compare, params: {} }, "compare");
    if (payload === null) return;
    compareScene = new CloudScene(payload, state.colormap);
    compareCanvas.hidden = false;
    render();
  } catch (err) {
    showError(`compare request failed: ${(err as Error).message}`,
              () => void refreshCompare());
  }
}

async function refreshSlice(): Promise<void> {
  try {
    const payload = await api.slice(state);
    if (payload === null) return;
    heatmap = new HeatmapModel(payload);
    render();
  } catch (err) {
    showError(`slice request failed: ${(err as Error).message}`, () => void refreshSlice());
  }
}

async function refreshBadges(): Promise<void> {
  propsRow = null;
  thresholdEstimate = null;
  renderBadges();
  try {
    const payload = await api.props(state.measure, PROPS_N, state.params);
    if (payload !== null && payload.rows.length > 0) {
      propsRow = payload.rows[0];
      renderBadges();
    }
  } catch {
    /* badges are optional; degrade silently */
  }
  const hint = THRESHOLD_HINTS[state.measure];
  if (hint) {
    try {
      const base = { ...state.params };
      delete base[hint.param];
      const t = await api.threshold(state.measure, hint.param, hint.property,
                                    hint.lo, hint.hi, 0.005, PROPS_N, base);
      if (t !== null) {
        thresholdEstimate = t.estimate;
        renderBadges();
        placeThresholdMarkers();
      }
    } catch {
      thresholdEstimate = null; // slider-only mode
    }
  }
}

// ---------------------------------------------------------------------------
// controls
// ---------------------------------------------------------------------------

function currentMeasure(): MeasureEntry | undefined {
  return measures.find((m) => m.id === state.measure);
}

function rebuildParamSliders(): void {
  paramBox.innerHTML = "";
  const entry = currentMeasure();
  if (!entry || entry.params.length === 0) return;
  for (const p of entry.params) {
    const lo = p.lo === null ? 0.01 : p.lo + (p.lo_open ? 0.01 : 0);
    const hi = p.hi === null ? 5 : p.hi;
    const value = state.params[p.name] ?? p.default;
    const label = el("label", {}, paramBox);
    label.textContent = `${p.name} `;
    const readout = el("span", {}, label);
    const track = el("div", { class: "slider-track" }, label);
    const slider = el("input", {
      type: "range", min: String(lo), max: String(hi), step: "0.01",
      value: String(value), "data-param": p.name,
    }, track);
    readout.textContent = value.toFixed(2);
    const apply = debounce((v: number) => {
      state.params[p.name] = v;
      syncUrl();
      void refreshField();
      if (state.view === "slice") void refreshSlice();
      void refreshBadges();
    }, SLIDER_DEBOUNCE_MS);
    slider.addEventListener("input", () => {
      const v = Number(slider.value);
      readout.textContent = v.toFixed(2);
      apply(v);
    });
  }
  placeThresholdMarkers();
}

function placeThresholdMarkers(): void {
  const hint = THRESHOLD_HINTS[state.measure];
  for (const track of paramBox.querySelectorAll(".slider-track")) {
    const marker = track.querySelector(".threshold-marker");
    if (marker) marker.remove();
    const slider = track.querySelector("input");
    if (!slider || !hint || thresholdEstimate === null) continue;
    if (slider.getAttribute("data-param") !== hint.param) continue;
    const lo = Number(slider.min);
    const hi = Number(slider.max);
    if (thresholdEstimate < lo || thresholdEstimate > hi) continue;
    const m = el("div", { class: "threshold-marker" }, track as HTMLElement);
    m.style.left = `${(100 * (thresholdEstimate - lo)) / (hi - lo)}%`;
    m.title = `property flip near ${thresholdEstimate.toFixed(3)}`;
  }
}

function rebuildSliceControl(): void {
  sliceBox.innerHTML = "";
  const label = el("label", {}, sliceBox);
  label.textContent = "positive fraction ";
  const readout = el("span", {}, label);
  const slider = el("input", {
    type: "range", min: "0", max: String(state.n), step: "1",
    value: String(Math.round(state.fraction * state.n)), id: "fraction-slider",
  }, label);
  const hintLine = el("div", { class: "snap-hint" }, sliceBox);
  readout.textContent = `P/n = ${state.fraction}`;
  const apply = debounce((p: number) => {
    const requested = state.fraction;
    state.fraction = snapFraction(p / state.n, state.n);
    if (Math.abs(requested - state.fraction) > 1e-12) {
      hintLine.textContent = `snapped to ${state.fraction}`;
    }
    syncUrl();
    void refreshSlice();
    render();
  }, SLIDER_DEBOUNCE_MS);
  slider.addEventListener("input", () => {
    const p = Number(slider.value);
    readout.textContent = `P/n = ${p}/${state.n}`;
    apply(p);
  });
}

function renderBadges(): void {
  badgeBox.innerHTML = "";
  if (!propsRow) return;
  const cells: Array<[string, string]> = [
    ["monotone", propsRow.monotonicity.verdict],
    ["class swap", propsRow.class_swap_symmetry.verdict],
    ["error type", propsRow.error_type_symmetry.verdict],
  ];
  for (const [name, verdict] of cells) {
    const chip = el("span", { class: `badge ${verdict}` }, badgeBox);
    chip.textContent = `${name}: ${verdict}`;
  }
  if (propsRow.undefined_points !== null) {
    const chip = el("span", { class: "badge" }, badgeBox);
    chip.textContent = `undefined pts: ${propsRow.undefined_points}`;
  }
  if (thresholdEstimate !== null) {
    const chip = el("span", { class: "badge" }, badgeBox);
    chip.textContent = `flip ~ ${thresholdEstimate.toFixed(3)}`;
  }
}

function updateInfo(): void {
  if (!scene) return;
  const g = scene.payload.gamut;
  const lohi = g.min === null ? "all undefined"
    : `[${g.min.toFixed(3)}, ${g.max!.toFixed(3)}]`;
  infoBox.textContent =
    `${scene.count.toLocaleString()} points, gamut ${lohi}, ` +
    `${g.undefined} undefined`;
}

function refreshVisibility(): void {
  for (const [kind, btn] of Object.entries(viewButtons)) {
    btn.classList.toggle("active", kind === state.view);
  }
  sliceCanvas.hidden = state.view !== "slice";
}

// ---------------------------------------------------------------------------
// rendering
// ---------------------------------------------------------------------------

let projected = new Float32Array(0);

function drawCloud(target: HTMLCanvasElement, which: CloudScene | null): void {
  const ctx = target.getContext("2d");
  if (!ctx || !which) return;
  const { width, height } = target;
  ctx.clearRect(0, 0, width, height);
  if (projected.length < which.count * 3) {
    projected = new Float32Array(which.count * 3);
  }
  camera.project(which.xyz, projected, width, height);
  const indices = state.view === "skeleton"
    ? which.skeletonIndex
    : which.payload.points.map((_, i) => i);
  const ordered = depthOrder(projected, indices);
  const radius = state.view === "skeleton" ? 3.5 : 2.2;
  for (const i of ordered) {
    ctx.fillStyle = which.colors[i];
    ctx.beginPath();
    ctx.arc(projected[3 * i], projected[3 * i + 1], radius, 0, Math.PI * 2);
    ctx.fill();
  }

  if (state.view === "slice") {
    const corners = which.slicePlaneCorners(state.fraction);
    const flat: number[] = [];
    for (const c of corners) flat.push(c[0], c[1], c[2]);
    const proj = new Float32Array(12);
    camera.project(flat, proj, width, height);
    ctx.beginPath();
    ctx.moveTo(proj[0], proj[1]);
    for (let i = 1; i < 4; i++) ctx.lineTo(proj[3 * i], proj[3 * i + 1]);
    ctx.closePath();
    ctx.fillStyle = "rgba(255, 213, 74, 0.15)";
    ctx.strokeStyle = "rgba(255, 213, 74, 0.9)";
    ctx.fill();
    ctx.stroke();
  }

  // vertex labels stay visible in every view
  const labels = which.vertexLabels();
  const flat: number[] = [];
  for (const l of labels) flat.push(l.xyz[0] * 1.12, l.xyz[1] * 1.12, l.xyz[2] * 1.12);
  const proj = new Float32Array(12);
  camera.project(flat, proj, width, height);
  ctx.font = "bold 13px system-ui, sans-serif";
  ctx.textAlign = "center";
  labels.forEach((l, i) => {
    ctx.fillStyle = "#ffffff";
    ctx.fillText(l.label, proj[3 * i], proj[3 * i + 1]);
  });
  if (which === compareScene) {
    ctx.fillStyle = "#aaa";
    ctx.textAlign = "left";
    ctx.fillText(which.payload.measure, 8, 16);
  }
}

function drawHeatmap(): void {
  const ctx = sliceCanvas.getContext("2d");
  if (!ctx || !heatmap) return;
  const { width, height } = sliceCanvas;
  ctx.clearRect(0, 0, width, height);
  const cw = width / heatmap.cols;
  const ch = height / heatmap.rows;
  for (let r = 0; r < heatmap.rows; r++) {
    for (let c = 0; c < heatmap.cols; c++) {
      ctx.fillStyle = heatmap.color(r, c, state.colormap);
      // row 0 (TNR = 0) at the bottom
      ctx.fillRect(c * cw, height - (r + 1) * ch, Math.ceil(cw), Math.ceil(ch));
    }
  }
  ctx.fillStyle = "#fff";
  ctx.font = "11px system-ui, sans-serif";
  ctx.textAlign = "left";
  ctx.fillText("TPR →", 4, height - 4);
  ctx.save();
  ctx.translate(10, 40);
  ctx.rotate(-Math.PI / 2);
  ctx.fillText("TNR →", -60, 0);
  ctx.restore();
}

function render(): void {
  drawCloud(canvas, scene);
  if (compareScene && state.compare) drawCloud(compareCanvas, compareScene);
  if (state.view === "slice") drawHeatmap();
}

// ---------------------------------------------------------------------------
// interaction
// ---------------------------------------------------------------------------

let dragging = false;
let lastX = 0;
let lastY = 0;
const urlSync = debounce(() => syncUrl(), 200);

canvas.addEventListener("mousedown", (e) => {
  dragging = true;
  lastX = e.clientX;
  lastY = e.clientY;
});
window.addEventListener("mouseup", () => {
  dragging = false;
  urlSync();
});
canvas.addEventListener("wheel", (e) => {
  e.preventDefault();
  camera.zoomBy(e.deltaY < 0 ? 1.1 : 1 / 1.1);
  urlSync();
  render();
}, { passive: false });

canvas.addEventListener("mousemove", (e) => {
  if (dragging) {
    camera.rotate((e.clientX - lastX) * 0.008, (e.clientY - lastY) * 0.008);
    lastX = e.clientX;
    lastY = e.clientY;
    tooltip.hidden = true;
    render();
    return;
  }
  if (!scene) return;
  const rect = canvas.getBoundingClientRect();
  const x = e.clientX - rect.left;
  const y = e.clientY - rect.top;
  const idx = state.view === "skeleton"
    ? pickNearest(projected, scene.count, x, y, 8, scene.skeletonIndex)
    : pickNearest(projected, scene.count, x, y, 8);
  if (idx < 0) {
    tooltip.hidden = true;
    return;
  }
  const info = scene.inspect(idx);
  tooltip.hidden = false;
  tooltip.style.left = `${e.clientX + 14}px`;
  tooltip.style.top = `${e.clientY + 14}px`;
  const value = info.value === null ? "undefined" : String(info.value);
  tooltip.textContent =
    `tp=${info.tp} fn=${info.fn} fp=${info.fp} tn=${info.tn} | ${value}`;
});
canvas.addEventListener("mouseleave", () => {
  tooltip.hidden = true;
});

sliceCanvas.addEventListener("mousemove", (e) => {
  if (!heatmap) return;
  const rect = sliceCanvas.getBoundingClientRect();
  const cell = heatmap.cellAt(e.clientX - rect.left, e.clientY - rect.top,
                              sliceCanvas.width, sliceCanvas.height);
  if (!cell) {
    tooltip.hidden = true;
    return;
  }
  const counts = heatmap.cellCounts(cell.row, cell.col);
  const v = heatmap.value(cell.row, cell.col);
  tooltip.hidden = false;
  tooltip.style.left = `${e.clientX + 14}px`;
  tooltip.style.top = `${e.clientY + 14}px`;
  tooltip.textContent = `tp=${counts.tp} fn=${counts.fn} fp=${counts.fp} ` +
    `tn=${counts.tn} | ${v === null ? "undefined" : v}`;
});
sliceCanvas.addEventListener("mouseleave", () => {
  tooltip.hidden = true;
});

nSlider.addEventListener("input", () => {
  nReadout.textContent = ` ${nSlider.value}`;
});
nSlider.addEventListener("change", () => {
  state.n = Number(nSlider.value);
  state.fraction = snapFraction(state.fraction, state.n);
  syncUrl();
  rebuildSliceControl();
  heatmap = null;
  void refreshField();
  void refreshCompare();
  if (state.view === "slice") void refreshSlice();
});

measureSelect.addEventListener("change", () => {
  state.measure = measureSelect.value;
  state.params = {};
  syncUrl();
  rebuildParamSliders();
  heatmap = null;
  void refreshField();
  if (state.view === "slice") void refreshSlice();
  void refreshBadges();
});

compareSelect.addEventListener("change", () => {
  state.compare = compareSelect.value || null;
  syncUrl();
  void refreshCompare();
});

window.addEventListener("hashchange", () => {
  const next = decodeState(window.location.hash, DEFAULT_STATE);
  Object.assign(state, next);
  camera.yaw = next.yaw;
  camera.pitch = next.pitch;
  camera.zoom = next.zoom;
  measureSelect.value = state.measure;
  compareSelect.value = state.compare ?? "";
  nSlider.value = String(state.n);
  nReadout.textContent = ` ${state.n}`;
  rebuildParamSliders();
  rebuildSliceControl();
  refreshVisibility();
  void refreshField();
  void refreshCompare();
  if (state.view === "slice") void refreshSlice();
  void refreshBadges();
});

// ---------------------------------------------------------------------------
// boot
// ---------------------------------------------------------------------------

async function boot(): Promise<void> {
  try {
    const entries = await api.measures();
    if (entries === null) return;
    measures = entries;
  } catch (err) {
    showError(`cannot reach the service: ${(err as Error).message}`, () => void boot());
    return;
  }
  measureSelect.innerHTML = "";
  compareSelect.innerHTML = "";
  el("option", { value: "" }, compareSelect).textContent = "none";
  for (const m of measures) {
    el("option", { value: m.id }, measureSelect).textContent = m.id;
    el("option", { value: m.id }, compareSelect).textContent = m.id;
  }
  measureSelect.value = state.measure;
  compareSelect.value = state.compare ?? "";
  nSlider.value = String(state.n);
  nReadout.textContent = ` ${state.n}`;
  rebuildParamSliders();
  rebuildSliceControl();
  refreshVisibility();
  void refreshField();
  void refreshCompare();
  if (state.view === "slice") void refreshSlice();
  void refreshBadges();
}

void boot();
