/** Tiny RGBA framebuffer with anti-aliased line drawing. */

export type Color = [number, number, number];

export class Raster {
  readonly width: number;
  readonly height: number;
  readonly data: Uint8ClampedArray;

  constructor(width: number, height: number) {
    if (!Number.isInteger(width) || !Number.isInteger(height) || width <= 0 || height <= 0) {
      throw new RangeError(`bad raster size ${width}x${height}`);
    }
    this.width = width;
    this.height = height;
    this.data = new Uint8ClampedArray(width * height * 4);
  }

  fill(color: Color): void {
    const [r, g, b] = color;
    for (let i = 0; i < this.data.length; i += 4) {
      this.data[i] = r;
      this.data[i + 1] = g;
      this.data[i + 2] = b;
      this.data[i + 3] = 255;
    }
  }

  /** Source-over blend of `color` at integer pixel (px, py) with coverage a in [0, 1]. */
  blend(px: number, py: number, color: Color, a: number): void {
    if (px < 0 || py < 0 || px >= this.width || py >= this.height || a <= 0) return;
    const i = (py * this.width + px) * 4;
    const w = Math.min(a, 1);
    this.data[i] = color[0] * w + this.data[i]! * (1 - w);
    this.data[i + 1] = color[1] * w + this.data[i + 1]! * (1 - w);
    this.data[i + 2] = color[2] * w + this.data[i + 2]! * (1 - w);
    this.data[i + 3] = 255;
  }
}

/** Xiaolin Wu anti-aliased line from (x0, y0) to (x1, y1) in pixel coordinates. */
export function drawLine(
  img: Raster,
  x0: number,
  y0: number,
  x1: number,
  y1: number,
  color: Color,
  alpha = 1,
): void {
  const steep = Math.abs(y1 - y0) > Math.abs(x1 - x0);
  if (steep) {
    [x0, y0] = [y0, x0];
    [x1, y1] = [y1, x1];
  }
  if (x0 > x1) {
    [x0, x1] = [x1, x0];
    [y0, y1] = [y1, y0];
  }
  const dx = x1 - x0;
  const grad = dx === 0 ? 1 : (y1 - y0) / dx;
  const put = (x: number, y: number, a: number) => {
    if (steep) img.blend(y, x, color, a * alpha);
    else img.blend(x, y, color, a * alpha);
  };

  let xEnd = Math.round(x0);
  let yEnd = y0 + grad * (xEnd - x0);
  let gap = 1 - (x0 + 0.5 - Math.floor(x0 + 0.5));
  const xPx0 = xEnd;
  put(xPx0, Math.floor(yEnd), (1 - (yEnd - Math.floor(yEnd))) * gap);
  put(xPx0, Math.floor(yEnd) + 1, (yEnd - Math.floor(yEnd)) * gap);
  let inter = yEnd + grad;

  xEnd = Math.round(x1);
  yEnd = y1 + grad * (xEnd - x1);
  gap = x1 + 0.5 - Math.floor(x1 + 0.5);
  const xPx1 = xEnd;
  put(xPx1, Math.floor(yEnd), (1 - (yEnd - Math.floor(yEnd))) * gap);
  put(xPx1, Math.floor(yEnd) + 1, (yEnd - Math.floor(yEnd)) * gap);

  for (let x = xPx0 + 1; x < xPx1; x++) {
    const fl = Math.floor(inter);
    put(x, fl, 1 - (inter - fl));
    put(x, fl + 1, inter - fl);
    inter += grad;
  }
}

/** Polyline with integer-ish width, drawn as parallel unit-offset strokes. */
export function drawPolyline(
  img: Raster,
  pts: Array<[number, number]>,
  color: Color,
  width = 1,
  alpha = 1,
): void {
  for (let i = 0; i + 1 < pts.length; i++) {
    const [x0, y0] = pts[i]!;
    const [x1, y1] = pts[i + 1]!;
    const len = Math.hypot(x1 - x0, y1 - y0);
    if (len === 0) continue;
    const nx = -(y1 - y0) / len;
    const ny = (x1 - x0) / len;
    for (let k = 0; k < width; k++) {
      const off = k - (width - 1) / 2;
      drawLine(img, x0 + off * nx, y0 + off * ny, x1 + off * nx, y1 + off * ny, color, alpha);
    }
  }
}

/** Filled disc with ~1px edge anti-aliasing. */
export function fillDisc(
  img: Raster,
  cx: number,
  cy: number,
  radius: number,
  color: Color,
): void {
  const x0 = Math.floor(cx - radius - 1);
  const x1 = Math.ceil(cx + radius + 1);
  const y0 = Math.floor(cy - radius - 1);
  const y1 = Math.ceil(cy + radius + 1);
  for (let y = y0; y <= y1; y++) {
    for (let x = x0; x <= x1; x++) {
      const d = Math.hypot(x - cx, y - cy);
      img.blend(x, y, color, radius + 0.5 - d);
    }
  }
}

/** World-to-pixel map with uniform scale (1:1 aspect) and a y flip. */
export class Viewport {
  readonly scale: number;
  private readonly ox: number;
  private readonly oy: number;

  constructor(
    bounds: { xmin: number; xmax: number; ymin: number; ymax: number },
    size: number,
    margin: number,
  ) {
    const w = bounds.xmax - bounds.xmin;
    const h = bounds.ymax - bounds.ymin;
    if (!(w > 0) || !(h > 0)) throw new RangeError("degenerate bounds");
    this.scale = (size - 2 * margin) / Math.max(w, h);
    this.ox = margin + (size - 2 * margin - this.scale * w) / 2 - this.scale * bounds.xmin;
    this.oy = size - margin - (size - 2 * margin - this.scale * h) / 2 + this.scale * bounds.ymin;
  }

  toPixel(x: number, y: number): [number, number] {
    return [this.ox + this.scale * x, this.oy - this.scale * y];
  }
}
