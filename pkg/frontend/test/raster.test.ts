import { describe, expect, it } from "vitest";

import { drawLine, drawPolyline, fillDisc, Raster, Viewport } from "../src/raster.js";

function pixel(img: Raster, x: number, y: number): [number, number, number] {
  const i = (y * img.width + x) * 4;
  return [img.data[i]!, img.data[i + 1]!, img.data[i + 2]!];
}

describe("Raster", () => {
  it("fills and blends", () => {
    const img = new Raster(4, 3);
    img.fill([200, 200, 200]);
    expect(pixel(img, 3, 2)).toEqual([200, 200, 200]);
    img.blend(1, 1, [0, 0, 0], 0.5);
    expect(pixel(img, 1, 1)).toEqual([100, 100, 100]);
    img.blend(-1, 0, [0, 0, 0], 1); // out of bounds: ignored
    img.blend(4, 0, [0, 0, 0], 1);
    expect(pixel(img, 0, 0)).toEqual([200, 200, 200]);
  });

  it("rejects bad sizes", () => {
    expect(() => new Raster(0, 5)).toThrowError(RangeError);
    expect(() => new Raster(2.5, 5)).toThrowError(RangeError);
  });
});

describe("drawLine", () => {
  it("inks a horizontal run at full coverage", () => {
    const img = new Raster(10, 10);
    img.fill([255, 255, 255]);
    drawLine(img, 1, 5, 8, 5, [0, 0, 0]);
    for (let x = 2; x <= 7; x++) expect(pixel(img, x, 5)).toEqual([0, 0, 0]);
    expect(pixel(img, 5, 3)).toEqual([255, 255, 255]);
  });

  it("spreads coverage across rows on a diagonal", () => {
    const img = new Raster(12, 12);
    img.fill([255, 255, 255]);
    drawLine(img, 1, 1.5, 9, 5.5, [0, 0, 0]);
    let touched = 0;
    for (let y = 0; y < 12; y++) {
      for (let x = 0; x < 12; x++) {
        if (pixel(img, x, y)[0] < 250) touched += 1;
      }
    }
    expect(touched).toBeGreaterThan(10);
  });
});

describe("drawPolyline and fillDisc", () => {
  it("closes a square outline", () => {
    const img = new Raster(20, 20);
    img.fill([255, 255, 255]);
    const pts: Array<[number, number]> = [[3, 3], [16, 3], [16, 16], [3, 16], [3, 3]];
    drawPolyline(img, pts, [0, 0, 0], 1);
    expect(pixel(img, 10, 3)[0]).toBeLessThan(50);
    expect(pixel(img, 16, 10)[0]).toBeLessThan(50);
    expect(pixel(img, 10, 10)).toEqual([255, 255, 255]);
  });

  it("fills a disc with a soft edge", () => {
    const img = new Raster(20, 20);
    img.fill([255, 255, 255]);
    fillDisc(img, 10, 10, 4, [0, 0, 0]);
    expect(pixel(img, 10, 10)).toEqual([0, 0, 0]);
    expect(pixel(img, 13, 10)).toEqual([0, 0, 0]);
    expect(pixel(img, 17, 10)).toEqual([255, 255, 255]);
  });
});

describe("Viewport", () => {
  it("maps with uniform scale and a y flip", () => {
    const vp = new Viewport({ xmin: 0, xmax: 2, ymin: 0, ymax: 1 }, 100, 10);
    expect(vp.scale).toBe(40);
    expect(vp.toPixel(1, 0.5)).toEqual([50, 50]);
    const [, pyLow] = vp.toPixel(1, 0.1);
    const [, pyHigh] = vp.toPixel(1, 0.9);
    expect(pyHigh).toBeLessThan(pyLow);
  });

  it("rejects degenerate bounds", () => {
    expect(() => new Viewport({ xmin: 1, xmax: 1, ymin: 0, ymax: 1 }, 100, 10)).toThrowError(
      RangeError,
    );
  });
});
