import type {
  DensityResponse,
  EdgesResponse,
  GuidanceResponse,
  MetaResponse,
  MobilityResponse,
  Session,
  SessionUpdate,
  TimelineResponse,
  TimeWindow,
  TrajectoriesResponse,
} from "./types";

type Params = Record<string, string | number | undefined>;

function query(params: Params): string {
  const search = new URLSearchParams();
  for (const [key, value] of Object.entries(params)) {
    if (value !== undefined) search.set(key, String(value));
  }
  const text = search.toString();
  return text ? `?${text}` : "";
}

export class ApiClient {
  constructor(private readonly base: string = "") {}

  private async get<T>(path: string, params: Params = {}): Promise<T> {
    const resp = await fetch(`${this.base}${path}${query(params)}`);
    if (!resp.ok) {
      const body = await resp.text();
      throw new Error(`GET ${path} failed (${resp.status}): ${body}`);
    }
    return (await resp.json()) as T;
  }

  meta(): Promise<MetaResponse> {
    return this.get("/api/meta");
  }

  timeline(bins: number): Promise<TimelineResponse> {
    return this.get("/api/timeline", { bins });
  }

  trajectories(win: TimeWindow, k: number, ids?: string[]): Promise<TrajectoriesResponse> {
    return this.get("/api/trajectories", {
      from: win.start,
      to: win.end,
      k,
      ids: ids?.join(","),
    });
  }

  edges(node: string, win: TimeWindow, k: number): Promise<EdgesResponse> {
    return this.get("/api/edges", { node, from: win.start, to: win.end, k });
  }

  density(
    win: TimeWindow,
    k: number,
    bandwidth: number,
    w: number,
    h: number,
  ): Promise<DensityResponse> {
    return this.get("/api/density", { from: win.start, to: win.end, k, bandwidth, w, h });
  }

  mobility(win: TimeWindow): Promise<MobilityResponse> {
    return this.get("/api/mobility", { from: win.start, to: win.end });
  }

  guidance(locked: string[], padding = 0): Promise<GuidanceResponse> {
    return this.get("/api/guidance", { locked: locked.join(","), padding });
  }

  getSession(): Promise<Session> {
    return this.get("/api/session");
  }

  async putSession(update: SessionUpdate): Promise<Session> {
    const resp = await fetch("/api/session", {
      method: "PUT",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(update),
    });
    if (!resp.ok) {
      throw new Error(`PUT /api/session failed (${resp.status})`);
    }
    return (await resp.json()) as Session;
  }
}

/** Decode the density grid payload into a row-major Float32Array. */
export function decodeGridValues(values: string, width: number, height: number): Float32Array {
  const raw = atob(values);
  const bytes = new Uint8Array(raw.length);
  for (let i = 0; i < raw.length; i++) bytes[i] = raw.charCodeAt(i);
  const floats = new Float32Array(bytes.buffer);
  if (floats.length !== width * height) {
    throw new Error(`grid payload has ${floats.length} cells, expected ${width * height}`);
  }
  return floats;
}
