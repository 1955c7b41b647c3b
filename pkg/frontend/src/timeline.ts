import {
  EDGES_AREA,
  GUIDANCE_FILL,
  HOVER_HIGHLIGHT,
  NODES_AREA,
} from "./colors";
import { resolveBrush } from "./state";
import type { GuidanceResponse, TimelineResponse, TimeWindow } from "./types";

const SVG_NS = "http://www.w3.org/2000/svg";
const LIVE_PREVIEW_MS = 150; // throttle for live window commits while dragging

function svg<K extends keyof SVGElementTagNameMap>(
  name: K,
  attrs: Record<string, string | number> = {},
): SVGElementTagNameMap[K] {
  const node = document.createElementNS(SVG_NS, name);
  for (const [key, value] of Object.entries(attrs)) {
    node.setAttribute(key, String(value));
  }
  return node;
}

function clear(node: Element): void {
  while (node.firstChild) node.removeChild(node.firstChild);
}

/**
 * Event timeline: overlapping red (nodes) and blue (edges) area charts, a
 * brushable window, orange guidance rectangles that snap the selection on
 * click, and a yellow bar marking the hovered point's time coordinate.
 */
export class Timeline {
  readonly root: SVGSVGElement;
  private readonly areaLayer: SVGGElement;
  private readonly guidanceLayer: SVGGElement;
  private readonly selectionRect: SVGRectElement;
  private readonly hoverBar: SVGLineElement;
  private readonly brushSurface: SVGRectElement;

  private readonly width: number;
  private readonly height: number;

  private extent: TimeWindow | null = null;
  private window: TimeWindow | null = null;

  onWindowChange: (win: TimeWindow, live: boolean) => void = () => {};

  constructor(container: HTMLElement, options: { width?: number; height?: number } = {}) {
    this.width = options.width ?? 800;
    this.height = options.height ?? 120;
    this.root = svg("svg", {
      viewBox: `0 0 ${this.width} ${this.height}`,
      width: this.width,
      height: this.height,
      class: "timeline",
    });
    this.areaLayer = svg("g", { class: "areas" });
    this.guidanceLayer = svg("g", { class: "guidance" });
    this.selectionRect = svg("rect", {
      class: "selection",
      y: 0,
      height: this.height,
      fill: "#777777",
      "fill-opacity": 0.18,
      stroke: "#555555",
    });
    this.hoverBar = svg("line", {
      class: "hover-bar",
      y1: 0,
      y2: this.height,
      stroke: HOVER_HIGHLIGHT,
      "stroke-width": 2,
      visibility: "hidden",
    });
    this.brushSurface = svg("rect", {
      class: "brush-surface",
      x: 0,
      y: 0,
      width: this.width,
      height: this.height,
      fill: "transparent",
    });
    this.root.append(
      this.areaLayer,
      this.selectionRect,
      this.guidanceLayer,
      this.hoverBar,
      this.brushSurface,
    );
    container.appendChild(this.root);
    this.bindBrush();
  }

  private toX(t: number): number {
    if (!this.extent || this.extent.end === this.extent.start) return 0;
    return ((t - this.extent.start) / (this.extent.end - this.extent.start)) * this.width;
  }

  private toT(x: number): number {
    if (!this.extent) return 0;
    const f = Math.min(1, Math.max(0, x / this.width));
    return this.extent.start + f * (this.extent.end - this.extent.start);
  }

  setData(timeline: TimelineResponse): void {
    this.extent = timeline.extent;
    this.renderAreas(timeline);
    this.setWindow(this.window ?? this.extent);
  }

  setGuidance(guidance: GuidanceResponse | null): void {
    this.renderGuidance(guidance);
  }

  private renderAreas(timeline: TimelineResponse): void {
    clear(this.areaLayer);
    if (!timeline.bins.length || !this.extent) return;
    const peak = Math.max(
      1,
      ...timeline.bins.map((b) => Math.max(b.nodes_alive, b.edges_alive)),
    );
    const toY = (count: number) => this.height - (count / peak) * (this.height - 8);

    const build = (value: (b: { nodes_alive: number; edges_alive: number }) => number) => {
      let d = `M${this.toX(timeline.bins[0].start)},${this.height}`;
      for (const bin of timeline.bins) {
        d += `L${this.toX(bin.start)},${toY(value(bin))}`;
        d += `L${this.toX(bin.end)},${toY(value(bin))}`;
      }
      d += `L${this.toX(timeline.bins[timeline.bins.length - 1].end)},${this.height}Z`;
      return d;
    };
    this.areaLayer.appendChild(
      svg("path", {
        d: build((b) => b.nodes_alive),
        fill: NODES_AREA,
        "fill-opacity": 0.45,
        class: "area-nodes",
      }),
    );
    this.areaLayer.appendChild(
      svg("path", {
        d: build((b) => b.edges_alive),
        fill: EDGES_AREA,
        "fill-opacity": 0.45,
        class: "area-edges",
      }),
    );
  }

  private renderGuidance(guidance: GuidanceResponse | null): void {
    clear(this.guidanceLayer);
    if (!guidance) return;
    for (const interval of guidance.intervals) {
      const rect = svg("rect", {
        class: "guidance-interval",
        x: this.toX(interval.start),
        width: Math.max(2, this.toX(interval.end) - this.toX(interval.start)),
        y: 0,
        height: this.height,
        fill: GUIDANCE_FILL,
        "fill-opacity": 0.35,
        "data-start": interval.start,
        "data-end": interval.end,
      });
      // Snap the selection exactly onto the guidance interval.
      rect.addEventListener("click", () => {
        this.onWindowChange({ start: interval.start, end: interval.end }, false);
      });
      this.guidanceLayer.appendChild(rect);
    }
  }

  setWindow(win: TimeWindow | null): void {
    this.window = win;
    if (!win || !this.extent) {
      this.selectionRect.setAttribute("width", "0");
      return;
    }
    const x0 = this.toX(win.start);
    const x1 = this.toX(win.end);
    this.selectionRect.setAttribute("x", String(x0));
    this.selectionRect.setAttribute("width", String(Math.max(0, x1 - x0)));
  }

  setHoverBar(t: number | null): void {
    if (t === null) {
      this.hoverBar.setAttribute("visibility", "hidden");
      return;
    }
    const x = this.toX(t);
    this.hoverBar.setAttribute("x1", String(x));
    this.hoverBar.setAttribute("x2", String(x));
    this.hoverBar.setAttribute("visibility", "visible");
  }

  private bindBrush(): void {
    let dragging = false;
    let startX = 0;
    let lastLive = 0;

    const surfaceX = (event: MouseEvent): number => {
      const rect = this.brushSurface.getBoundingClientRect();
      return event.clientX - rect.left;
    };

    this.brushSurface.addEventListener("mousedown", (event) => {
      dragging = true;
      startX = surfaceX(event);
    });
    this.brushSurface.addEventListener("mousemove", (event) => {
      if (!dragging || !this.extent) return;
      const raw = {
        start: this.toT(Math.min(startX, surfaceX(event))),
        end: this.toT(Math.max(startX, surfaceX(event))),
      };
      this.setWindow(raw);
      const now = Date.now();
      if (now - lastLive >= LIVE_PREVIEW_MS) {
        lastLive = now;
        this.onWindowChange(resolveBrush(raw, this.extent), true);
      }
    });
    this.brushSurface.addEventListener("mouseup", (event) => {
      if (!dragging || !this.extent) return;
      dragging = false;
      const raw = {
        start: this.toT(Math.min(startX, surfaceX(event))),
        end: this.toT(Math.max(startX, surfaceX(event))),
      };
      // Zero-width brushes reset to the full extent.
      this.onWindowChange(resolveBrush(raw, this.extent), false);
    });
  }
}
