import { describe, expect, it } from "vitest";

import { FormatError, parseCurve, parseOrbit } from "../src/csv.js";

// unit square traversed counterclockwise: every sample is a corner,
// written as (incoming row, outgoing row) pairs sharing s and point
const SQUARE = [
  "# closed=true length=4",
  "0,0,0,0,-1",
  "0,0,0,1,0",
  "1,1,0,1,0",
  "1,1,0,0,1",
  "2,1,1,0,1",
  "2,1,1,-1,0",
  "3,0,1,-1,0",
  "3,0,1,0,-1",
  "",
].join("\n");

describe("parseCurve", () => {
  it("collapses corner row pairs", () => {
    const c = parseCurve(SQUARE);
    expect(c.closed).toBe(true);
    expect(c.length).toBe(4);
    expect(Array.from(c.s)).toEqual([0, 1, 2, 3]);
    expect(Array.from(c.x)).toEqual([0, 1, 1, 0]);
    expect(c.corners.map((k) => k.index)).toEqual([0, 1, 2, 3]);
    // incoming tangent at the first corner points down, outgoing right
    expect(c.corners[0]).toMatchObject({ itx: 0, ity: -1 });
    expect(c.tx[0]).toBe(1);
  });

  it("parses smooth curves without corners", () => {
    const c = parseCurve("# closed=false length=2\n0,0,0,1,0\n1,1,0,1,0\n");
    expect(c.corners).toEqual([]);
    expect(c.s.length).toBe(2);
  });

  it.each([
    ["", "empty curve file"],
    ["0,0,0,1,0\n", "bad curve header"],
    ["# closed=yes length=4\n0,0,0,1,0\n", "bad curve header"],
    ["# closed=true length=0\n0,0,0,1,0\n", "bad curve length"],
    ["# closed=true length=4\n0,0,0,1\n", "expected 5 fields"],
    ["# closed=true length=4\n0,0,,1,0\n1,1,0,1,0\n", "line 2"],
    ["# closed=true length=4\n0,0,0,1,0\n0,5,5,1,0\n", "different point"],
    ["# closed=true length=4\n0,0,0,1,0\n2,1,0,1,0\n1,1,1,1,0\n", "not increasing"],
    ["# closed=true length=4\n0,0,0,1,0\n5,1,0,1,0\n", "exceed"],
  ])("rejects malformed input %#", (text, fragment) => {
    expect(() => parseCurve(text)).toThrowError(FormatError);
    expect(() => parseCurve(text)).toThrowError(new RegExp(fragment));
  });
});

describe("parseOrbit", () => {
  it("reads bounce rows", () => {
    const o = parseOrbit("0,0.0,1.0,0.0\n1,2.5,1.1,2.5\n2,5.1,0.9,5.3\n");
    expect(Array.from(o.sigma)).toEqual([0, 2.5, 5.1]);
    expect(Array.from(o.lift)).toEqual([0, 2.5, 5.3]);
  });

  it("rejects non-consecutive bounce indices", () => {
    expect(() => parseOrbit("0,0,1,0\n2,1,1,1\n")).toThrowError(/bounce index 2/);
  });

  it("rejects short rows and empty files", () => {
    expect(() => parseOrbit("0,0,1\n")).toThrowError(/expected 4 fields/);
    expect(() => parseOrbit("")).toThrowError(/empty orbit file/);
  });
});
