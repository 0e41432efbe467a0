export { parseCurve, parseOrbit, FormatError } from "./csv.js";
export type { CurveCorner, CurveData, OrbitData } from "./csv.js";
export { curveBounds, pointAt, unionBounds } from "./geometry.js";
export type { Bounds } from "./geometry.js";
export { encodePng } from "./png.js";
export { drawLine, drawPolyline, fillDisc, Raster, Viewport } from "./raster.js";
export type { Color } from "./raster.js";
export { renderOrbit, renderPair } from "./render.js";
export type { RenderOptions } from "./render.js";
