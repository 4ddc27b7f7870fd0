/** Viewer smoke criteria: point count from the payload, V_TP hover value,
 * snapped-only slice requests, and URL round-trip. */

import { describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import { OrbitCamera, pickNearest } from "../src/camera.js";
import { CloudScene } from "../src/cloud.js";
import { decodeState, encodeState, isRealizableFraction } from "../src/state.js";
import { DEFAULT_STATE } from "../src/state.js";
import { accuracyFieldPayload, jsonResponse } from "./fixtures.js";
import type { ViewState } from "../src/types.js";

describe("viewer smoke", () => {
  it("accuracy at n=60 renders 39,711 points, all counted from the payload", async () => {
    const payload = accuracyFieldPayload(60);
    const client = new ApiClient("", () => Promise.resolve(jsonResponse(payload)));
    const received = await client.field({ ...DEFAULT_STATE, measure: "accuracy", n: 60 });
    expect(received).not.toBeNull();
    const scene = new CloudScene(received!);
    expect(scene.count).toBe(39711);
    expect(received!.points.length).toBe(39711);
  });

  it("hover at the TP vertex reports value 1.0 from the payload", () => {
    const payload = accuracyFieldPayload(60);
    const scene = new CloudScene(payload);
    const camera = new OrbitCamera(); // default orientation
    const projected = new Float32Array(scene.count * 3);
    camera.project(scene.xyz, projected, 640, 520);

    const vTpIndex = payload.points.findIndex(
      (p) => p[0] === 60 && p[1] === 0 && p[2] === 0 && p[3] === 0);
    expect(vTpIndex).toBeGreaterThanOrEqual(0);
    const sx = projected[3 * vTpIndex];
    const sy = projected[3 * vTpIndex + 1];

    const picked = pickNearest(projected, scene.count, sx, sy, 8);
    const info = scene.inspect(picked);
    expect(info.value).toBe(1.0);
    expect(info).toEqual({ tp: 60, fn: 0, fp: 0, tn: 0, value: 1.0 });
  });

  it("an unrealizable slice fraction snaps; only realizable requests go out", async () => {
    const urls: string[] = [];
    const client = new ApiClient("", (url) => {
      urls.push(url);
      return Promise.resolve(jsonResponse({}));
    });
    const state: ViewState = {
      ...DEFAULT_STATE, measure: "accuracy", n: 100, fraction: 0.333, view: "slice",
    };
    await client.slice(state);
    expect(urls.length).toBe(1);
    const sent = Number(/pos_fraction=([^&]+)/.exec(urls[0])![1]);
    expect(sent).toBe(0.33);
    expect(isRealizableFraction(sent, 100)).toBe(true);
  });

  it("URL round-trip restores the identical view state", () => {
    const state: ViewState = {
      measure: "precision",
      params: {},
      n: 60,
      view: "cloud",
      fraction: 0.5,
      yaw: 0.9182736455,
      pitch: -0.1234567891,
      zoom: 1.75,
      colormap: "diverging",
      compare: null,
    };
    const url = "#" + encodeState(state);
    expect(decodeState(url)).toEqual(state);
  });
});
