/** Point lookup and bounding boxes on parsed curves. */

import type { CurveData } from "./csv.js";

export interface Bounds {
  xmin: number;
  xmax: number;
  ymin: number;
  ymax: number;
}

/** Rightmost sample with s[i] <= q (q already wrapped into [0, length)). */
function locate(s: Float64Array, q: number): number {
  let lo = 0;
  let hi = s.length - 1;
  while (lo < hi) {
    const mid = (lo + hi + 1) >> 1;
    if (s[mid]! <= q) lo = mid;
    else hi = mid - 1;
  }
  return lo;
}

/**
 * Point at arc position q by chord interpolation between samples; q is
 * taken modulo the curve length. Good to the sampling sagitta, which is
 * all a raster needs.
 */
export function pointAt(curve: CurveData, q: number): [number, number] {
  const L = curve.length;
  let u = q % L;
  if (u < 0) u += L;
  const n = curve.s.length;
  const i = locate(curve.s, u);
  const j = (i + 1) % n;
  const span = (j === 0 ? L : curve.s[j]!) - curve.s[i]!;
  const t = span > 0 ? (u - curve.s[i]!) / span : 0;
  return [
    curve.x[i]! + t * (curve.x[j]! - curve.x[i]!),
    curve.y[i]! + t * (curve.y[j]! - curve.y[i]!),
  ];
}

export function curveBounds(curve: CurveData): Bounds {
  let xmin = Infinity;
  let xmax = -Infinity;
  let ymin = Infinity;
  let ymax = -Infinity;
  for (let i = 0; i < curve.x.length; i++) {
    const x = curve.x[i]!;
    const y = curve.y[i]!;
    if (x < xmin) xmin = x;
    if (x > xmax) xmax = x;
    if (y < ymin) ymin = y;
    if (y > ymax) ymax = y;
  }
  return { xmin, xmax, ymin, ymax };
}

export function unionBounds(list: Bounds[]): Bounds {
  return {
    xmin: Math.min(...list.map((b) => b.xmin)),
    xmax: Math.max(...list.map((b) => b.xmax)),
    ymin: Math.min(...list.map((b) => b.ymin)),
    ymax: Math.max(...list.map((b) => b.ymax)),
  };
}
