/** Scene assembly: table/caustic pairs and orbit chord diagrams. */

import type { CurveData, OrbitData } from "./csv.js";
import { curveBounds, pointAt, unionBounds, type Bounds } from "./geometry.js";
import { drawPolyline, fillDisc, Raster, Viewport, type Color } from "./raster.js";

const BACKGROUND: Color = [255, 255, 255];
const TABLE: Color = [31, 41, 55];
const CAUSTIC: Color = [194, 65, 12];
const CHORD: Color = [29, 78, 216];

export interface RenderOptions {
  size?: number;
}

function viewportFor(bounds: Bounds, size: number): Viewport {
  const pad = 0.05 * Math.max(bounds.xmax - bounds.xmin, bounds.ymax - bounds.ymin);
  return new Viewport(
    {
      xmin: bounds.xmin - pad,
      xmax: bounds.xmax + pad,
      ymin: bounds.ymin - pad,
      ymax: bounds.ymax + pad,
    },
    size,
    10,
  );
}

function curvePixels(curve: CurveData, vp: Viewport): Array<[number, number]> {
  const pts: Array<[number, number]> = [];
  for (let i = 0; i < curve.x.length; i++) {
    pts.push(vp.toPixel(curve.x[i]!, curve.y[i]!));
  }
  if (curve.closed && pts.length > 0) pts.push(pts[0]!);
  return pts;
}

/** Table outline with its caustic inside; caustic corners get dot markers. */
export function renderPair(table: CurveData, caustic: CurveData, opts: RenderOptions = {}): Raster {
  const size = opts.size ?? 900;
  const img = new Raster(size, size);
  img.fill(BACKGROUND);
  const vp = viewportFor(unionBounds([curveBounds(table), curveBounds(caustic)]), size);
  drawPolyline(img, curvePixels(table, vp), TABLE, 2);
  drawPolyline(img, curvePixels(caustic, vp), CAUSTIC, 2);
  for (const corner of caustic.corners) {
    const [px, py] = vp.toPixel(caustic.x[corner.index]!, caustic.y[corner.index]!);
    fillDisc(img, px, py, 3.5, CAUSTIC);
  }
  return img;
}

/** Table outline with every orbit chord drawn translucently. */
export function renderOrbit(table: CurveData, orbit: OrbitData, opts: RenderOptions = {}): Raster {
  const size = opts.size ?? 900;
  const img = new Raster(size, size);
  img.fill(BACKGROUND);
  const vp = viewportFor(curveBounds(table), size);
  let prev = vp.toPixel(...pointAt(table, orbit.sigma[0]!));
  for (let k = 1; k < orbit.sigma.length; k++) {
    const cur = vp.toPixel(...pointAt(table, orbit.sigma[k]!));
    drawPolyline(img, [prev, cur], CHORD, 1, 0.35);
    prev = cur;
  }
  drawPolyline(img, curvePixels(table, vp), TABLE, 2);
  return img;
}
