/**
 * caustica-plots: render caustica CSV exports to PNG.
 *
 *   caustica-plots pair  --table table.csv --caustic gamma.csv --out pair.png
 *   caustica-plots orbit --table table.csv --orbit orbit.csv   --out orbit.png
 *
 * Both commands accept --size <pixels> (default 900). Errors print
 * `Name: message` on stderr and exit 1; usage problems exit 2.
 */

import { readFileSync, writeFileSync } from "node:fs";
import { parseArgs } from "node:util";
import { pathToFileURL } from "node:url";

import { parseCurve, parseOrbit } from "./csv.js";
import { encodePng } from "./png.js";
import { renderOrbit, renderPair } from "./render.js";

const USAGE =
  "usage: caustica-plots pair --table <csv> --caustic <csv> --out <png> [--size N]\n" +
  "       caustica-plots orbit --table <csv> --orbit <csv> --out <png> [--size N]";

function fail(message: string): never {
  process.stderr.write(`${USAGE}\n${message}\n`);
  process.exit(2);
}

function need(values: Record<string, string | undefined>, key: string): string {
  const v = values[key];
  if (v === undefined) fail(`missing --${key}`);
  return v;
}

export function main(argv: string[]): number {
  const command = argv[0];
  if (command !== "pair" && command !== "orbit") {
    fail(`unknown command ${JSON.stringify(command ?? "")}`);
  }
  let values: Record<string, string | undefined>;
  try {
    values = parseArgs({
      args: argv.slice(1),
      options: {
        table: { type: "string" },
        caustic: { type: "string" },
        orbit: { type: "string" },
        out: { type: "string" },
        size: { type: "string", default: "900" },
      },
    }).values;
  } catch (err) {
    fail((err as Error).message);
  }
  const size = Number(values.size);
  if (!Number.isInteger(size) || size < 64 || size > 8192) {
    fail(`--size must be an integer in [64, 8192], got ${values.size}`);
  }

  const table = parseCurve(readFileSync(need(values, "table"), "utf8"));
  const img =
    command === "pair"
      ? renderPair(table, parseCurve(readFileSync(need(values, "caustic"), "utf8")), { size })
      : renderOrbit(table, parseOrbit(readFileSync(need(values, "orbit"), "utf8")), { size });
  writeFileSync(need(values, "out"), encodePng(img.width, img.height, img.data));
  return 0;
}

if (process.argv[1] && import.meta.url === pathToFileURL(process.argv[1]).href) {
  try {
    process.exit(main(process.argv.slice(2)));
  } catch (err) {
    const e = err as Error;
    process.stderr.write(`${e.name}: ${e.message}\n`);
    process.exit(1);
  }
}
