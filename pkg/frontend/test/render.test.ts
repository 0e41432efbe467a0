import { describe, expect, it } from "vitest";

import type { CurveData, OrbitData } from "../src/csv.js";
import { renderOrbit, renderPair } from "../src/render.js";
import type { Raster } from "../src/raster.js";

function pixel(img: Raster, x: number, y: number): [number, number, number] {
  const i = (y * img.width + x) * 4;
  return [img.data[i]!, img.data[i + 1]!, img.data[i + 2]!];
}

function squareCurve(half: number): CurveData {
  const s = [0, 2 * half, 4 * half, 6 * half];
  const x = [half, -half, -half, half];
  const y = [half, half, -half, -half];
  return {
    closed: true,
    length: 8 * half,
    s: Float64Array.from(s),
    x: Float64Array.from(x),
    y: Float64Array.from(y),
    tx: Float64Array.from([-1, 0, 1, 0]),
    ty: Float64Array.from([0, -1, 0, 1]),
    corners: [0, 1, 2, 3].map((index) => ({ index, itx: 0, ity: 0 })),
  };
}

function circleCurve(n = 64): CurveData {
  const L = 2 * Math.PI;
  const s = new Float64Array(n);
  const x = new Float64Array(n);
  const y = new Float64Array(n);
  const tx = new Float64Array(n);
  const ty = new Float64Array(n);
  for (let i = 0; i < n; i++) {
    const a = (L * i) / n;
    s[i] = a;
    x[i] = Math.cos(a);
    y[i] = Math.sin(a);
    tx[i] = -Math.sin(a);
    ty[i] = Math.cos(a);
  }
  return { closed: true, length: L, s, x, y, tx, ty, corners: [] };
}

describe("renderPair", () => {
  it("draws both outlines and corner markers on a white field", () => {
    const img = renderPair(squareCurve(1), squareCurve(0.5), { size: 100 });
    expect(pixel(img, 50, 50)).toEqual([255, 255, 255]); // interior stays clear
    // the union bounds are the padded outer square, so the map is exact:
    const scale = 80 / 2.2;
    const px = Math.round(50 + scale * 0.5);
    const py = Math.round(50 - scale * 0.5);
    const [r, g] = pixel(img, px, py); // caustic corner marker
    expect(r).toBeGreaterThan(150);
    expect(g).toBeLessThan(120);
    const edge = pixel(img, 50, Math.round(50 - scale * 1)); // outer edge midpoint
    expect(edge[0]).toBeLessThan(120);
    let inked = 0;
    for (let i = 0; i < img.data.length; i += 4) {
      if (img.data[i]! < 250) inked += 1;
    }
    expect(inked).toBeGreaterThan(200);
  });
});

describe("renderOrbit", () => {
  it("draws translucent chords across the table", () => {
    const orbit: OrbitData = {
      sigma: Float64Array.from([0, Math.PI, 2 * Math.PI]),
      theta: Float64Array.from([1, 1, 1]),
      lift: Float64Array.from([0, Math.PI, 2 * Math.PI]),
    };
    const img = renderOrbit(circleCurve(), orbit, { size: 100 });
    const [r, , b] = pixel(img, 50, 50); // diameter chord passes the center
    expect(r).toBeLessThan(210);
    expect(b).toBeGreaterThan(215);
  });
});
