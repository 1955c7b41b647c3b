import type { GridBounds } from "./types";

/**
 * Marching-squares contour extraction over a density grid.
 *
 * Grid values sit at cell centers; polygons come back in layout coordinates.
 * Saddle cells are disambiguated with the cell-center average.
 */

export interface Contour {
  level: number;
  /** Each polyline is a list of [x, y]; closed loops repeat no point. */
  polygons: Array<Array<[number, number]>>;
  closed: boolean[];
}

type Point = [number, number];
type Segment = [Point, Point];

/** Uniform iso levels strictly between the grid's min and max. */
export function uniformLevels(min: number, max: number, count: number): number[] {
  if (!(max > min) || count < 1) return [];
  const levels: number[] = [];
  for (let i = 1; i <= count; i++) {
    levels.push(min + ((max - min) * i) / (count + 1));
  }
  return levels;
}

function segmentsForLevel(
  values: Float32Array | number[],
  width: number,
  height: number,
  xs: number[],
  ys: number[],
  level: number,
): Segment[] {
  const v = (r: number, c: number) => Number(values[r * width + c]);
  const segments: Segment[] = [];

  for (let r = 0; r < height - 1; r++) {
    for (let c = 0; c < width - 1; c++) {
      const tl = v(r, c);
      const tr = v(r, c + 1);
      const br = v(r + 1, c + 1);
      const bl = v(r + 1, c);
      let caseIndex =
        (tl >= level ? 1 : 0) |
        (tr >= level ? 2 : 0) |
        (br >= level ? 4 : 0) |
        (bl >= level ? 8 : 0);
      if (caseIndex === 0 || caseIndex === 15) continue;

      const lerp = (a: number, b: number) => (level - a) / (b - a);
      const top: Point = [xs[c] + lerp(tl, tr) * (xs[c + 1] - xs[c]), ys[r]];
      const right: Point = [xs[c + 1], ys[r] + lerp(tr, br) * (ys[r + 1] - ys[r])];
      const bottom: Point = [xs[c] + lerp(bl, br) * (xs[c + 1] - xs[c]), ys[r + 1]];
      const left: Point = [xs[c], ys[r] + lerp(tl, bl) * (ys[r + 1] - ys[r])];

      const emit = (a: Point, b: Point) => segments.push([a, b]);
      switch (caseIndex) {
        case 1: emit(left, top); break;
        case 2: emit(top, right); break;
        case 3: emit(left, right); break;
        case 4: emit(right, bottom); break;
        case 5: {
          const centerInside = (tl + tr + br + bl) / 4 >= level;
          if (centerInside) {
            emit(top, right);
            emit(left, bottom);
          } else {
            emit(left, top);
            emit(right, bottom);
          }
          break;
        }
        case 6: emit(top, bottom); break;
        case 7: emit(left, bottom); break;
        case 8: emit(left, bottom); break;
        case 9: emit(top, bottom); break;
        case 10: {
          const centerInside = (tl + tr + br + bl) / 4 >= level;
          if (centerInside) {
            emit(left, top);
            emit(right, bottom);
          } else {
            emit(top, right);
            emit(left, bottom);
          }
          break;
        }
        case 11: emit(right, bottom); break;
        case 12: emit(left, right); break;
        case 13: emit(top, right); break;
        case 14: emit(left, top); break;
      }
    }
  }
  return segments;
}

function chainSegments(segments: Segment[]): { polygons: Point[][]; closed: boolean[] } {
  const key = (p: Point) => `${p[0].toPrecision(12)},${p[1].toPrecision(12)}`;
  const adjacency = new Map<string, Array<{ seg: number; end: 0 | 1 }>>();
  segments.forEach((seg, index) => {
    for (const end of [0, 1] as const) {
      const k = key(seg[end]);
      const slot = adjacency.get(k);
      if (slot) slot.push({ seg: index, end });
      else adjacency.set(k, [{ seg: index, end }]);
    }
  });

  const used = new Array<boolean>(segments.length).fill(false);
  const polygons: Point[][] = [];
  const closed: boolean[] = [];

  for (let start = 0; start < segments.length; start++) {
    if (used[start]) continue;
    used[start] = true;
    const line: Point[] = [segments[start][0], segments[start][1]];

    // Extend forward from the tail, then backward from the head.
    for (const direction of [1, 0] as const) {
      for (;;) {
        const tip = direction === 1 ? line[line.length - 1] : line[0];
        const candidates = adjacency.get(key(tip)) ?? [];
        const next = candidates.find((c) => !used[c.seg]);
        if (!next) break;
        used[next.seg] = true;
        const other = segments[next.seg][next.end === 0 ? 1 : 0];
        if (direction === 1) line.push(other);
        else line.unshift(other);
      }
    }

    const isClosed =
      line.length > 2 && key(line[0]) === key(line[line.length - 1]);
    if (isClosed) line.pop();
    polygons.push(line);
    closed.push(isClosed);
  }
  return { polygons, closed };
}

/**
 * Extract `levelCount` uniformly spaced contours from a row-major grid.
 * A flat grid yields no contours.
 */
export function contoursFromGrid(
  values: Float32Array | number[],
  width: number,
  height: number,
  bounds: GridBounds,
  levelCount: number,
): Contour[] {
  let min = Infinity;
  let max = -Infinity;
  for (let i = 0; i < width * height; i++) {
    const value = Number(values[i]);
    if (value < min) min = value;
    if (value > max) max = value;
  }
  const levels = uniformLevels(min, max, levelCount);
  if (!levels.length) return [];

  const dx = (bounds.x_max - bounds.x_min) / width;
  const dy = (bounds.y_max - bounds.y_min) / height;
  const xs: number[] = [];
  for (let c = 0; c < width; c++) xs.push(bounds.x_min + (c + 0.5) * dx);
  const ys: number[] = [];
  for (let r = 0; r < height; r++) ys.push(bounds.y_min + (r + 0.5) * dy);

  return levels.map((level) => {
    const segments = segmentsForLevel(values, width, height, xs, ys, level);
    const { polygons, closed } = chainSegments(segments);
    return { level, polygons, closed };
  });
}
