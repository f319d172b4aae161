import { execFileSync } from "child_process";
import { mkdtempSync, readFileSync, writeFileSync } from "fs";
import { tmpdir } from "os";
import { fileURLToPath } from "url";
import path from "path";
import { describe, expect, it } from "vitest";

const CLI = fileURLToPath(new URL("../dist/cli.js", import.meta.url));
const COMPARE = fileURLToPath(new URL("./fixtures/compare_golden.csv", import.meta.url));
const ZSCORE = fileURLToPath(new URL("./fixtures/zscore_golden.csv", import.meta.url));

interface Run {
  code: number;
  stdout: string;
  stderr: string;
}

function run(...args: string[]): Run {
  try {
    const stdout = execFileSync("node", [CLI, ...args], { encoding: "utf-8" });
    return { code: 0, stdout, stderr: "" };
  } catch (e) {
    const err = e as { status: number | null; stdout: string; stderr: string };
    return { code: err.status ?? -1, stdout: err.stdout ?? "", stderr: err.stderr ?? "" };
  }
}

describe("plot-sweep CLI", () => {
  const dir = mkdtempSync(path.join(tmpdir(), "plots-"));

  it("writes an SVG and reruns byte-identically", () => {
    const out = path.join(dir, "fig.svg");
    const r = run(COMPARE, "--group-by", "nodes", "--out", out);
    expect(r.code).toBe(0);
    expect(r.stdout.trim()).toBe(out);
    const first = readFileSync(out, "utf-8");
    expect(first.startsWith("<svg ")).toBe(true);
    run(COMPARE, "--group-by", "nodes", "--out", out);
    expect(readFileSync(out, "utf-8")).toBe(first);
  });

  it("renders zscore bars with --zscore", () => {
    const out = path.join(dir, "z.svg");
    const r = run(ZSCORE, "--zscore", "--out", out);
    expect(r.code).toBe(0);
    expect(readFileSync(out, "utf-8")).toContain("z-score");
  });

  it("exits 2 on a schema violation, naming the problem", () => {
    const bad = path.join(dir, "bad.csv");
    const lines = readFileSync(COMPARE, "utf-8").split("\n");
    lines[2] = lines[2].replace(",baseline,", ",annealer,");
    writeFileSync(bad, lines.join("\n"));
    const r = run(bad, "--group-by", "nodes", "--out", path.join(dir, "x.svg"));
    expect(r.code).toBe(2);
    expect(r.stderr).toMatch(/column 'solver'/);
  });

  it("exits 2 on an empty CSV", () => {
    const empty = path.join(dir, "empty.csv");
    writeFileSync(empty, "");
    const r = run(empty, "--group-by", "nodes", "--out", path.join(dir, "x.svg"));
    expect(r.code).toBe(2);
    expect(r.stderr).toMatch(/empty file/);
  });

  it("exits 2 when --zscore gets a compare CSV", () => {
    const r = run(COMPARE, "--zscore", "--out", path.join(dir, "x.svg"));
    expect(r.code).toBe(2);
    expect(r.stderr).toMatch(/expected columns/);
  });

  it("exits 2 on a missing input file", () => {
    const r = run(path.join(dir, "nope.csv"), "--group-by", "nodes", "--out", path.join(dir, "x.svg"));
    expect(r.code).toBe(2);
    expect(r.stderr).toMatch(/ENOENT|no such file/i);
  });

  it("exits 1 on usage errors", () => {
    expect(run(COMPARE, "--group-by", "nodes").code).toBe(1); // missing --out
    expect(run(COMPARE, "--out", path.join(dir, "x.svg")).code).toBe(1); // missing --group-by
    expect(
      run(COMPARE, "--group-by", "edges", "--out", path.join(dir, "x.svg")).code,
    ).toBe(1); // bad choice
  });
});
