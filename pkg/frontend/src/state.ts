import type { TimeWindow } from "./types";

export type HoverMode = "edges" | "movement";

export interface HoverTarget {
  nodeId: string;
  /** Time coordinate of the hovered sampled point. */
  t: number;
}

export interface ViewState {
  extent: TimeWindow | null;
  window: TimeWindow | null;
  locked: string[];
  hover: HoverTarget | null;
  mode: HoverMode;
  samplesPerSegment: number;
  bandwidth: number;
  densityOn: boolean;
  mobilityColorOn: boolean;
  transform: { x: number; y: number; scale: number };
}

export function initialState(): ViewState {
  return {
    extent: null,
    window: null,
    locked: [],
    hover: null,
    mode: "edges",
    samplesPerSegment: 3,
    bandwidth: 1.0,
    densityOn: true,
    mobilityColorOn: false,
    transform: { x: 0, y: 0, scale: 1 },
  };
}

type Listener = (state: ViewState) => void;

/** Tiny observable store; every update notifies subscribers synchronously. */
export class Store {
  private current: ViewState = initialState();
  private listeners: Listener[] = [];

  get state(): ViewState {
    return this.current;
  }

  update(partial: Partial<ViewState>): void {
    this.current = { ...this.current, ...partial };
    for (const listener of this.listeners) listener(this.current);
  }

  subscribe(listener: Listener): () => void {
    this.listeners.push(listener);
    return () => {
      this.listeners = this.listeners.filter((l) => l !== listener);
    };
  }
}

/**
 * Resolve a raw brush selection against the extent: selections are clamped,
 * and a degenerate (zero-width) brush resets to the full extent.
 */
export function resolveBrush(raw: TimeWindow, extent: TimeWindow): TimeWindow {
  const lo = Math.max(extent.start, Math.min(raw.start, raw.end));
  const hi = Math.min(extent.end, Math.max(raw.start, raw.end));
  if (!(hi > lo)) {
    return { ...extent };
  }
  return { start: lo, end: hi };
}

export function sameWindow(a: TimeWindow | null, b: TimeWindow | null): boolean {
  if (a === null || b === null) return a === b;
  return a.start === b.start && a.end === b.end;
}

export function windowContains(win: TimeWindow, t: number): boolean {
  return t >= win.start && t <= win.end;
}
