/**
 * Parsers for the two CSV formats the caustica CLI exports.
 *
 * Curve files: a `# closed=<bool> length=<L>` header line followed by
 * `s,x,y,tx,ty` rows. A corner is two consecutive rows sharing the same
 * arc position and point; the first carries the incoming unit tangent,
 * the second the outgoing one. Orbit files: bare `k,sigma,theta,lift`
 * rows with consecutive bounce indices.
 */

import { z } from "zod";

const finite = z.number().finite();

const curveRow = z.tuple([finite, finite, finite, finite, finite]);
const orbitRow = z.tuple([z.number().int().nonnegative(), finite, finite, finite]);

export interface CurveCorner {
  /** Sample index of the corner after duplicate rows are collapsed. */
  index: number;
  itx: number;
  ity: number;
}

export interface CurveData {
  closed: boolean;
  length: number;
  s: Float64Array;
  x: Float64Array;
  y: Float64Array;
  /** Outgoing unit tangents; corners keep the incoming one in {@link corners}. */
  tx: Float64Array;
  ty: Float64Array;
  corners: CurveCorner[];
}

export interface OrbitData {
  sigma: Float64Array;
  theta: Float64Array;
  lift: Float64Array;
}

export class FormatError extends Error {
  override name = "FormatError";
}

const HEADER = /^# closed=(true|false) length=([^ ]+)$/;

function splitRow(line: string, lineNo: number, fields: number): number[] {
  const parts = line.split(",");
  if (parts.length !== fields) {
    throw new FormatError(`line ${lineNo}: expected ${fields} fields, got ${parts.length}`);
  }
  // Number("") is 0; map blanks to NaN so validation rejects them
  return parts.map((p) => (p.trim() === "" ? NaN : Number(p)));
}

export function parseCurve(text: string): CurveData {
  const lines = text.split("\n").filter((l) => l.length > 0);
  const headLine = lines[0];
  if (headLine === undefined) throw new FormatError("empty curve file");
  const head = HEADER.exec(headLine);
  if (!head) throw new FormatError(`bad curve header: ${JSON.stringify(headLine)}`);
  const closed = head[1] === "true";
  const length = Number(head[2]);
  if (!Number.isFinite(length) || length <= 0) {
    throw new FormatError(`bad curve length ${head[2]}`);
  }

  const rows: [number, number, number, number, number][] = [];
  for (let i = 1; i < lines.length; i++) {
    const parsed = curveRow.safeParse(splitRow(lines[i]!, i + 1, 5));
    if (!parsed.success) throw new FormatError(`line ${i + 1}: ${parsed.error.issues[0]?.message}`);
    rows.push(parsed.data);
  }
  if (rows.length < 2) throw new FormatError("curve needs at least 2 samples");

  const s: number[] = [];
  const x: number[] = [];
  const y: number[] = [];
  const tx: number[] = [];
  const ty: number[] = [];
  const corners: CurveCorner[] = [];
  for (let i = 0; i < rows.length; i++) {
    const row = rows[i]!;
    const next = rows[i + 1];
    if (next !== undefined && next[0] === row[0]) {
      // incoming-tangent half of a corner pair
      if (next[1] !== row[1] || next[2] !== row[2]) {
        throw new FormatError(`corner pair at s=${row[0]} repeats a different point`);
      }
      corners.push({ index: s.length, itx: row[3], ity: row[4] });
      continue;
    }
    s.push(row[0]);
    x.push(row[1]);
    y.push(row[2]);
    tx.push(row[3]);
    ty.push(row[4]);
  }
  for (let i = 1; i < s.length; i++) {
    if (s[i]! <= s[i - 1]!) throw new FormatError(`arc positions not increasing at sample ${i}`);
  }
  if (s[s.length - 1]! >= length) throw new FormatError("arc positions exceed stated length");

  return {
    closed,
    length,
    s: Float64Array.from(s),
    x: Float64Array.from(x),
    y: Float64Array.from(y),
    tx: Float64Array.from(tx),
    ty: Float64Array.from(ty),
    corners,
  };
}

export function parseOrbit(text: string): OrbitData {
  const lines = text.split("\n").filter((l) => l.length > 0);
  if (lines.length === 0) throw new FormatError("empty orbit file");
  const sigma: number[] = [];
  const theta: number[] = [];
  const lift: number[] = [];
  for (let i = 0; i < lines.length; i++) {
    const parsed = orbitRow.safeParse(splitRow(lines[i]!, i + 1, 4));
    if (!parsed.success) throw new FormatError(`line ${i + 1}: ${parsed.error.issues[0]?.message}`);
    const [k, sg, th, lf] = parsed.data;
    if (k !== i) throw new FormatError(`line ${i + 1}: bounce index ${k}, expected ${i}`);
    sigma.push(sg);
    theta.push(th);
    lift.push(lf);
  }
  return {
    sigma: Float64Array.from(sigma),
    theta: Float64Array.from(theta),
    lift: Float64Array.from(lift),
  };
}
