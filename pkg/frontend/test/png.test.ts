import { crc32, inflateSync } from "node:zlib";
import { describe, expect, it } from "vitest";

import { encodePng } from "../src/png.js";

interface Chunk {
  type: string;
  data: Buffer;
  crc: number;
}

function readChunks(png: Buffer): Chunk[] {
  expect(Array.from(png.subarray(0, 8))).toEqual([137, 80, 78, 71, 13, 10, 26, 10]);
  const chunks: Chunk[] = [];
  let off = 8;
  while (off < png.length) {
    const len = png.readUInt32BE(off);
    const type = png.subarray(off + 4, off + 8).toString("latin1");
    const data = png.subarray(off + 8, off + 8 + len);
    const crc = png.readUInt32BE(off + 8 + len);
    chunks.push({ type, data, crc });
    off += 12 + len;
  }
  return chunks;
}

describe("encodePng", () => {
  it("emits a decodable RGBA image", () => {
    const w = 3;
    const h = 2;
    const rgba = new Uint8ClampedArray(w * h * 4);
    for (let i = 0; i < w * h; i++) {
      rgba[i * 4] = 10 * i;
      rgba[i * 4 + 1] = 100;
      rgba[i * 4 + 2] = 255 - 10 * i;
      rgba[i * 4 + 3] = 255;
    }
    const png = encodePng(w, h, rgba);
    const chunks = readChunks(png);
    expect(chunks.map((c) => c.type)).toEqual(["IHDR", "IDAT", "IEND"]);

    const ihdr = chunks[0]!.data;
    expect(ihdr.length).toBe(13);
    expect(ihdr.readUInt32BE(0)).toBe(w);
    expect(ihdr.readUInt32BE(4)).toBe(h);
    expect(ihdr[8]).toBe(8); // bit depth
    expect(ihdr[9]).toBe(6); // RGBA

    // CRCs must agree with zlib's independent implementation
    for (const c of chunks) {
      const body = Buffer.concat([Buffer.from(c.type, "latin1"), c.data]);
      expect(c.crc).toBe(crc32(body) >>> 0);
    }

    const raw = inflateSync(chunks[1]!.data);
    expect(raw.length).toBe(h * (1 + w * 4));
    for (let y = 0; y < h; y++) {
      expect(raw[y * (1 + w * 4)]).toBe(0); // filter: none
      const line = raw.subarray(y * (1 + w * 4) + 1, (y + 1) * (1 + w * 4));
      expect(Array.from(line)).toEqual(Array.from(rgba.subarray(y * w * 4, (y + 1) * w * 4)));
    }
  });

  it("rejects a mismatched pixel buffer", () => {
    expect(() => encodePng(2, 2, new Uint8ClampedArray(3))).toThrowError(RangeError);
  });
});
