import {
  ANCHOR_STROKE,
  EDGE_STROKE,
  HOVER_HIGHLIGHT,
  LOCKED_IN_WINDOW,
  LOCKED_OUT_OF_WINDOW,
  MOVEMENT_STROKE,
  NODE_FILL,
  densityColor,
  mobilityColor,
} from "./colors";
import { contoursFromGrid } from "./marching";
import { decodeGridValues } from "./api";
import type { ViewState } from "./state";
import { windowContains } from "./state";
import type {
  DensityResponse,
  EdgeInstruction,
  MobilityResponse,
  Trajectory,
} from "./types";

const SVG_NS = "http://www.w3.org/2000/svg";
const INTERPOLATED_RADIUS = 2.5;
const ANCHOR_RATIO = 2; // anchor circles are twice the interpolated size
const CONTOUR_LEVELS = 8;

export interface MainViewOptions {
  width?: number;
  height?: number;
  margin?: number;
}

interface Bbox {
  xMin: number;
  xMax: number;
  yMin: number;
  yMax: number;
}

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
 * The 2D projection: density contours under aged trajectory trails, with
 * on-demand edge or movement overlays for the hovered node.  Zoom and pan
 * only touch the root transform; data always comes from the engine.
 */
export class MainView {
  readonly root: SVGSVGElement;
  private readonly world: SVGGElement;
  private readonly densityLayer: SVGGElement;
  private readonly trajectoryLayer: SVGGElement;
  private readonly overlayLayer: SVGGElement;
  private readonly notice: SVGTextElement;

  private readonly width: number;
  private readonly height: number;
  private readonly margin: number;

  private bbox: Bbox | null = null;
  private trajectories: Trajectory[] = [];
  private lockedTrajectories: Trajectory[] = [];
  private density: DensityResponse | null = null;
  private mobilityByNode = new Map<string, number>();
  private mobilityMax = 0;

  onHoverPoint: (nodeId: string, t: number) => void = () => {};
  onUnhover: () => void = () => {};

  constructor(container: HTMLElement, options: MainViewOptions = {}) {
    this.width = options.width ?? 800;
    this.height = options.height ?? 560;
    this.margin = options.margin ?? 24;

    this.root = svg("svg", {
      viewBox: `0 0 ${this.width} ${this.height}`,
      width: this.width,
      height: this.height,
      class: "main-view",
    });
    this.world = svg("g", { class: "world" });
    this.densityLayer = svg("g", { class: "density-layer" });
    this.trajectoryLayer = svg("g", { class: "trajectory-layer" });
    this.overlayLayer = svg("g", { class: "overlay-layer" });
    this.world.append(this.densityLayer, this.trajectoryLayer, this.overlayLayer);
    this.notice = svg("text", {
      x: this.width / 2,
      y: this.height / 2,
      "text-anchor": "middle",
      class: "empty-notice",
    });
    this.root.append(this.world, this.notice);
    container.appendChild(this.root);
    this.bindZoomPan();
  }

  /** Fix the data-to-screen projection from full-extent trajectory data. */
  setProjectionFrom(trajectories: Trajectory[]): void {
    const xs: number[] = [];
    const ys: number[] = [];
    for (const traj of trajectories) {
      for (const p of traj.points) {
        xs.push(p.x);
        ys.push(p.y);
      }
    }
    if (!xs.length) {
      this.bbox = null;
      return;
    }
    const pad = 1e-9; // guard zero-size boxes
    this.bbox = {
      xMin: Math.min(...xs),
      xMax: Math.max(...xs) + pad,
      yMin: Math.min(...ys),
      yMax: Math.max(...ys) + pad,
    };
  }

  toScreen(x: number, y: number): [number, number] {
    const box = this.bbox;
    if (!box) return [x, y];
    const spanX = box.xMax - box.xMin;
    const spanY = box.yMax - box.yMin;
    const scale = Math.min(
      (this.width - 2 * this.margin) / spanX,
      (this.height - 2 * this.margin) / spanY,
    );
    const offsetX = (this.width - scale * spanX) / 2;
    const offsetY = (this.height - scale * spanY) / 2;
    return [offsetX + (x - box.xMin) * scale, offsetY + (y - box.yMin) * scale];
  }

  setData(
    trajectories: Trajectory[],
    lockedTrajectories: Trajectory[],
    density: DensityResponse | null,
    mobility: MobilityResponse | null,
  ): void {
    this.trajectories = trajectories;
    this.lockedTrajectories = lockedTrajectories;
    this.density = density;
    this.mobilityByNode.clear();
    this.mobilityMax = 0;
    if (mobility) {
      for (const entry of mobility.ranking) {
        this.mobilityByNode.set(entry.node_id, entry.length);
        this.mobilityMax = Math.max(this.mobilityMax, entry.length);
      }
    }
  }

  render(state: ViewState): void {
    clear(this.densityLayer);
    clear(this.trajectoryLayer);
    this.clearOverlay();

    if (!this.trajectories.length && !this.lockedTrajectories.length) {
      this.notice.textContent = "no data in the current selection";
      return;
    }
    this.notice.textContent = "";

    if (state.densityOn && this.density) {
      this.renderDensity(this.density);
    }

    const lockedSet = new Set(state.locked);
    // Unlocked trajectories for the brushed window first, locked trails
    // (full extent) drawn on top.
    for (const traj of this.trajectories) {
      if (lockedSet.has(traj.node_id)) continue;
      this.renderTrajectory(traj, state, false);
    }
    for (const traj of this.lockedTrajectories) {
      this.renderTrajectory(traj, state, true);
    }
  }

  private renderDensity(density: DensityResponse): void {
    const values = decodeGridValues(density.values, density.width, density.height);
    const contours = contoursFromGrid(
      values, density.width, density.height, density.bounds, CONTOUR_LEVELS,
    );
    contours.forEach((contour, index) => {
      const fraction = (index + 1) / (contours.length + 1);
      for (let i = 0; i < contour.polygons.length; i++) {
        const polygon = contour.polygons[i];
        if (polygon.length < 2) continue;
        const path = polygon
          .map((pt, j) => {
            const [x, y] = this.toScreen(pt[0], pt[1]);
            return `${j === 0 ? "M" : "L"}${x.toFixed(2)},${y.toFixed(2)}`;
          })
          .join("");
        this.densityLayer.appendChild(
          svg("path", {
            d: contour.closed[i] ? `${path}Z` : path,
            class: "contour",
            fill: contour.closed[i] ? densityColor(fraction) : "none",
            "fill-opacity": 0.35,
            stroke: densityColor(fraction),
            "stroke-width": 1,
          }),
        );
      }
    });
  }

  private pointFill(nodeId: string, t: number, state: ViewState, locked: boolean): string {
    if (locked) {
      const win = state.window ?? state.extent;
      const inside = win ? windowContains(win, t) : true;
      return inside ? LOCKED_IN_WINDOW : LOCKED_OUT_OF_WINDOW;
    }
    if (state.mobilityColorOn && this.mobilityMax > 0) {
      const length = this.mobilityByNode.get(nodeId) ?? 0;
      return mobilityColor(length / this.mobilityMax);
    }
    return NODE_FILL;
  }

  private renderTrajectory(traj: Trajectory, state: ViewState, locked: boolean): void {
    const group = svg("g", {
      class: `trajectory${locked ? " locked" : ""}`,
      "data-node-id": traj.node_id,
    });
    for (const point of traj.points) {
      const [cx, cy] = this.toScreen(point.x, point.y);
      const anchor = point.kind === "anchor";
      const circle = svg("circle", {
        cx,
        cy,
        r: anchor ? INTERPOLATED_RADIUS * ANCHOR_RATIO : INTERPOLATED_RADIUS,
        fill: this.pointFill(traj.node_id, point.t, state, locked),
        opacity: point.opacity,
        class: `point ${point.kind}`,
        "data-node-id": traj.node_id,
        "data-t": point.t,
      });
      if (anchor) {
        circle.setAttribute("stroke", ANCHOR_STROKE);
        circle.setAttribute("stroke-width", "1.5");
      }
      circle.addEventListener("mouseenter", () => this.onHoverPoint(traj.node_id, point.t));
      circle.addEventListener("mouseleave", () => this.onUnhover());
      group.appendChild(circle);
    }
    this.trajectoryLayer.appendChild(group);
  }

  /** Edge overlay for the hovered node (edges mode). */
  showEdges(instructions: EdgeInstruction[], hover: { nodeId: string; t: number }): void {
    this.clearOverlay();
    for (const ins of instructions) {
      const [x1, y1] = this.toScreen(ins.endpoint_a.x, ins.endpoint_a.y);
      const [x2, y2] = this.toScreen(ins.endpoint_b.x, ins.endpoint_b.y);
      this.overlayLayer.appendChild(
        svg("line", {
          x1, y1, x2, y2,
          stroke: EDGE_STROKE,
          "stroke-width": 1.5,
          opacity: ins.opacity,
          class: "edge",
          "data-edge-id": ins.edge_id,
        }),
      );
    }
    this.highlightHovered(hover);
  }

  /** Movement polyline overlay for the hovered node (movement mode). */
  showMovement(traj: Trajectory, hover: { nodeId: string; t: number }): void {
    this.clearOverlay();
    for (const seg of traj.movement) {
      const a = traj.points[seg.start_index];
      const b = traj.points[seg.end_index];
      const [x1, y1] = this.toScreen(a.x, a.y);
      const [x2, y2] = this.toScreen(b.x, b.y);
      this.overlayLayer.appendChild(
        svg("line", {
          x1, y1, x2, y2,
          stroke: MOVEMENT_STROKE,
          "stroke-width": 2.5,
          opacity: seg.opacity,
          class: "movement",
        }),
      );
    }
    this.highlightHovered(hover);
  }

  private highlightHovered(hover: { nodeId: string; t: number }): void {
    const selector = `circle[data-node-id="${hover.nodeId}"][data-t="${hover.t}"]`;
    const target = this.trajectoryLayer.querySelector(selector);
    if (!target) return;
    const highlight = svg("circle", {
      cx: target.getAttribute("cx") ?? 0,
      cy: target.getAttribute("cy") ?? 0,
      r: Number(target.getAttribute("r") ?? INTERPOLATED_RADIUS) + 2,
      fill: HOVER_HIGHLIGHT,
      class: "hover-highlight",
    });
    this.overlayLayer.appendChild(highlight);
  }

  clearOverlay(): void {
    clear(this.overlayLayer);
  }

  applyTransform(state: ViewState): void {
    const { x, y, scale } = state.transform;
    this.world.setAttribute("transform", `translate(${x},${y}) scale(${scale})`);
  }

  onTransformChange: (t: { x: number; y: number; scale: number }) => void = () => {};
  private transform = { x: 0, y: 0, scale: 1 };

  /** Wheel zoom around the pointer plus drag panning; transform only. */
  private bindZoomPan(): void {
    let panning = false;
    let lastX = 0;
    let lastY = 0;

    this.root.addEventListener("wheel", (event) => {
      event.preventDefault();
      const factor = Math.exp(-event.deltaY * 0.001);
      const scale = Math.min(10, Math.max(0.1, this.transform.scale * factor));
      const applied = scale / this.transform.scale;
      const px = event.offsetX;
      const py = event.offsetY;
      this.transform = {
        scale,
        x: px - (px - this.transform.x) * applied,
        y: py - (py - this.transform.y) * applied,
      };
      this.onTransformChange({ ...this.transform });
    });
    this.root.addEventListener("mousedown", (event) => {
      if ((event.target as Element).tagName === "circle") return;
      panning = true;
      lastX = event.clientX;
      lastY = event.clientY;
    });
    this.root.addEventListener("mousemove", (event) => {
      if (!panning) return;
      this.transform = {
        ...this.transform,
        x: this.transform.x + event.clientX - lastX,
        y: this.transform.y + event.clientY - lastY,
      };
      lastX = event.clientX;
      lastY = event.clientY;
      this.onTransformChange({ ...this.transform });
    });
    for (const kind of ["mouseup", "mouseleave"] as const) {
      this.root.addEventListener(kind, () => {
        panning = false;
      });
    }
  }
}
