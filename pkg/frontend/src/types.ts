/** Wire formats of the HTTP API (mirrors the service's response models). */

export interface TimeWindow {
  start: number;
  end: number;
}

export interface MetaResponse {
  extent: TimeWindow | null;
  node_count: number;
  edge_count: number;
  equivalent_timeslices: number;
}

export interface SampledPoint {
  t: number;
  x: number;
  y: number;
  kind: "anchor" | "interpolated";
  age: number;
  norm_age: number;
  opacity: number;
}

export interface MovementSegment {
  start_index: number;
  end_index: number;
  mean_age: number;
  mean_norm_age: number;
  opacity: number;
}

export interface Trajectory {
  node_id: string;
  label: string;
  points: SampledPoint[];
  movement: MovementSegment[];
}

export interface TrajectoriesResponse {
  window: TimeWindow;
  samples_per_segment: number;
  trajectories: Trajectory[];
}

export interface EdgeInstruction {
  edge_id: string;
  t_event: number;
  endpoint_a: SampledPoint;
  endpoint_b: SampledPoint;
  a_node_id: string;
  b_node_id: string;
  opacity: number;
}

export interface EdgesResponse {
  node_id: string;
  window: TimeWindow;
  edges: EdgeInstruction[];
}

export interface GridBounds {
  x_min: number;
  x_max: number;
  y_min: number;
  y_max: number;
}

export interface DensityResponse {
  bounds: GridBounds;
  width: number;
  height: number;
  bandwidth: number;
  /** base64 row-major float32, height*width cells */
  values: string;
}

export interface MobilityEntry {
  node_id: string;
  label: string;
  length: number;
}

export interface MobilityResponse {
  window: TimeWindow;
  ranking: MobilityEntry[];
  default_locked: string[];
  mean_length: number;
}

export interface GuidanceResponse {
  locked: string[];
  padding: number;
  intervals: TimeWindow[];
}

export interface TimelineBin {
  start: number;
  end: number;
  nodes_alive: number;
  edges_alive: number;
}

export interface TimelineResponse {
  extent: TimeWindow | null;
  bins: TimelineBin[];
  breakpoint_count: number;
}

export interface ViewParams {
  samples_per_segment: number;
  bandwidth: number;
  grid_width: number;
  grid_height: number;
  timeline_bins: number;
}

export interface Session {
  version: number;
  window: TimeWindow;
  locked: string[];
  params: ViewParams;
}

export interface SessionUpdate {
  window?: TimeWindow;
  locked?: string[];
  params?: ViewParams;
}
