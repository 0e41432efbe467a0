import { execFileSync, spawnSync } from "node:child_process";
import { mkdtempSync, readFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";
import { describe, expect, it } from "vitest";

const root = dirname(dirname(fileURLToPath(import.meta.url)));
const cli = join(root, "dist", "cli.js");
const fixtures = join(root, "test", "fixtures");
const outDir = mkdtempSync(join(tmpdir(), "caustica-plots-"));

function expectPng(path: string, size: number): void {
  const png = readFileSync(path);
  expect(Array.from(png.subarray(0, 8))).toEqual([137, 80, 78, 71, 13, 10, 26, 10]);
  expect(png.readUInt32BE(16)).toBe(size); // IHDR width
  expect(png.readUInt32BE(20)).toBe(size);
  expect(png.length).toBeGreaterThan(1000);
}

describe("caustica-plots CLI", () => {
  it("renders the switched table with its cornered caustic from CSV exports", () => {
    const out = join(outDir, "pair.png");
    execFileSync(process.execPath, [
      cli, "pair",
      "--table", join(fixtures, "switched_table.csv"),
      "--caustic", join(fixtures, "switched_caustic.csv"),
      "--out", out,
    ]);
    expectPng(out, 900);
  });

  it("renders an ellipse orbit chord diagram", () => {
    const out = join(outDir, "orbit.png");
    execFileSync(process.execPath, [
      cli, "orbit",
      "--table", join(fixtures, "ellipse.csv"),
      "--orbit", join(fixtures, "ellipse_orbit.csv"),
      "--out", out,
      "--size", "640",
    ]);
    expectPng(out, 640);
  });

  it("exits 2 on usage problems", () => {
    expect(spawnSync(process.execPath, [cli]).status).toBe(2);
    expect(spawnSync(process.execPath, [cli, "volume"]).status).toBe(2);
    expect(
      spawnSync(process.execPath, [cli, "pair", "--bogus", "1"]).status,
    ).toBe(2);
    expect(spawnSync(process.execPath, [cli, "pair", "--caustic", "x.csv"]).status).toBe(2);
  });

  it("exits 1 with a named error for unreadable input", () => {
    const run = spawnSync(
      process.execPath,
      [cli, "pair", "--table", join(outDir, "missing.csv"),
       "--caustic", join(outDir, "missing.csv"), "--out", join(outDir, "x.png")],
      { encoding: "utf8" },
    );
    expect(run.status).toBe(1);
    expect(run.stderr).toMatch(/^Error: ENOENT/);
  });

  it("exits 1 on malformed curve files", () => {
    const bad = join(outDir, "bad.csv");
    execFileSync("sh", ["-c", `printf 'not a header\\n' > ${bad}`]);
    const run = spawnSync(
      process.execPath,
      [cli, "pair", "--table", bad, "--caustic", bad, "--out", join(outDir, "y.png")],
      { encoding: "utf8" },
    );
    expect(run.status).toBe(1);
    expect(run.stderr).toMatch(/^FormatError: /);
  });
});
