/** Fixed encoding colors; the mobility scale is a perceptually uniform ramp. */

export const NODE_FILL = "#8a8a8a";
export const ANCHOR_STROKE = "#ff8c00"; // anchors carry an orange stroke
export const LOCKED_IN_WINDOW = "#e31a1c"; // bright red inside the selection
export const LOCKED_OUT_OF_WINDOW = "#f2a9a9"; // desaturated red outside
export const HOVER_HIGHLIGHT = "#ffd700"; // yellow hovered point / timeline bar
export const GUIDANCE_FILL = "#ff8c00"; // orange timeline rectangles
export const NODES_AREA = "#d62728"; // red node-count area chart
export const EDGES_AREA = "#1f77b4"; // blue edge-count area chart
export const EDGE_STROKE = "#444444";
export const MOVEMENT_STROKE = "#222222";

const VIRIDIS_STOPS: Array<[number, number, number]> = [
  [68, 1, 84],
  [71, 44, 122],
  [59, 81, 139],
  [44, 113, 142],
  [33, 144, 141],
  [39, 173, 129],
  [92, 200, 99],
  [170, 220, 50],
  [253, 231, 37],
];

/** Continuous color scale over [0, 1] used when mobility coloring is on. */
export function mobilityColor(t: number): string {
  const x = Math.min(1, Math.max(0, t)) * (VIRIDIS_STOPS.length - 1);
  const i = Math.min(VIRIDIS_STOPS.length - 2, Math.floor(x));
  const f = x - i;
  const [r0, g0, b0] = VIRIDIS_STOPS[i];
  const [r1, g1, b1] = VIRIDIS_STOPS[i + 1];
  const r = Math.round(r0 + f * (r1 - r0));
  const g = Math.round(g0 + f * (g1 - g0));
  const b = Math.round(b0 + f * (b1 - b0));
  return `rgb(${r},${g},${b})`;
}

/** Sequential fill for density contours (light to dark blue). */
export function densityColor(levelFraction: number): string {
  const t = Math.min(1, Math.max(0, levelFraction));
  const r = Math.round(226 - 180 * t);
  const g = Math.round(238 - 160 * t);
  const b = Math.round(248 - 100 * t);
  return `rgb(${r},${g},${b})`;
}
