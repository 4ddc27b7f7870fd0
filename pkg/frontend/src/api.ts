/** API client with latest-wins request sequencing per endpoint category.
 *
 * At most one response per category is ever delivered out of those in
 * flight: a response older than the latest request in its category
 * resolves to null and must be discarded by the caller.
 */

import { snapFraction } from "./state.js";
import type {
  FieldPayload,
  MeasureEntry,
  PropsPayload,
  SlicePayload,
  ThresholdPayload,
  ViewState,
} from "./types.js";

export type FetchLike = (url: string) => Promise<{
  ok: boolean;
  status: number;
  json(): Promise<unknown>;
}>;

export class ApiError extends Error {
  constructor(public status: number, message: string) {
    super(message);
  }
}

export class ApiClient {
  private seq: Record<string, number> = {};
  /** every URL handed to fetch, for tests and debugging */
  readonly requested: string[] = [];

  constructor(
    private base: string = "",
    private fetchFn: FetchLike = (url) => fetch(url),
  ) {}

  private async get<T>(category: string, path: string): Promise<T | null> {
    const ticket = (this.seq[category] ?? 0) + 1;
    this.seq[category] = ticket;
    const url = this.base + path;
    this.requested.push(url);
    const response = await this.fetchFn(url);
    if (this.seq[category] !== ticket) return null; // superseded: stale
    if (!response.ok) {
      let message = `HTTP ${response.status}`;
      try {
        const body = (await response.json()) as { message?: string };
        if (body && body.message) message = body.message;
      } catch {
        /* non-JSON error body */
      }
      throw new ApiError(response.status, message);
    }
    return (await response.json()) as T;
  }

  measures(): Promise<MeasureEntry[] | null> {
    return this.get("measures", "/api/measures");
  }

  private paramQuery(params: Record<string, number>): string {
    return Object.keys(params)
      .sort()
      .map((k) => `&param.${encodeURIComponent(k)}=${params[k]}`)
      .join("");
  }

  fieldUrl(state: ViewState): string {
    return `/api/field?measure=${encodeURIComponent(state.measure)}&n=${state.n}` +
      this.paramQuery(state.params);
  }

  /** `category` separates sequencing lanes, e.g. a comparison panel. */
  field(state: ViewState, category = "field"): Promise<FieldPayload | null> {
    return this.get(category, this.fieldUrl(state));
  }

  sliceUrl(state: ViewState): string {
    const f = snapFraction(state.fraction, state.n);
    return `/api/slice?measure=${encodeURIComponent(state.measure)}&n=${state.n}` +
      `&pos_fraction=${f}` + this.paramQuery(state.params);
  }

  slice(state: ViewState): Promise<SlicePayload | null> {
    return this.get("slice", this.sliceUrl(state));
  }

  props(measure: string, n: number,
        params: Record<string, number> = {}): Promise<PropsPayload | null> {
    return this.get(
      "props",
      `/api/props?measures=${encodeURIComponent(measure)}&n=${n}` +
        this.paramQuery(params),
    );
  }

  threshold(measure: string, param: string, property: string,
            lo: number, hi: number, tol: number, n: number,
            base: Record<string, number> = {}): Promise<ThresholdPayload | null> {
    const extras = this.paramQuery(base);
    return this.get(
      "threshold",
      `/api/threshold?measure=${encodeURIComponent(measure)}` +
        `&param=${encodeURIComponent(param)}&property=${encodeURIComponent(property)}` +
        `&lo=${lo}&hi=${hi}&tol=${tol}&n=${n}${extras}`,
    );
  }
}
