import { readFileSync } from "fs";
import { describe, expect, it } from "vitest";
import { plotSweep, plotZscore } from "../src/plot.js";

const golden = readFileSync(
  new URL("./fixtures/compare_golden.csv", import.meta.url),
  "utf-8",
);
const zscoreGolden = readFileSync(
  new URL("./fixtures/zscore_golden.csv", import.meta.url),
  "utf-8",
);

describe("plotSweep", () => {
  it("is byte-deterministic for identical input", () => {
    const a = plotSweep(golden, "nodes", "count");
    const b = plotSweep(golden, "nodes", "count");
    expect(a).toBe(b);
    expect(a.startsWith("<svg ")).toBe(true);
    expect(a.endsWith("</svg>\n")).toBe(true);
  });

  it("renders one panel per motif with one series per solver", () => {
    const svg = plotSweep(golden, "nodes", "count");
    for (const motif of ["bifan", "biparallel", "cascade", "ffl"]) {
      expect(svg).toContain(`>${motif}</text>`);
    }
    // 4 panels x 2 solvers
    expect(svg.match(/<polyline /g)?.length).toBe(8);
    expect(svg).toContain(">qaoa</text>");
    expect(svg).toContain(">baseline</text>");
  });

  it("carries no timestamp or environment-dependent content", () => {
    const svg = plotSweep(golden, "nodes", "count");
    expect(svg).not.toMatch(/20\d\d-\d\d-\d\d/);
    expect(svg).not.toMatch(/\d\d:\d\d:\d\d/);
  });

  it("switches axes with group key and metric", () => {
    expect(plotSweep(golden, "nodes", "count")).toContain("nodes (n)");
    expect(plotSweep(golden, "density", "count")).toContain("average degree (d)");
    expect(plotSweep(golden, "ratio", "time")).toContain("activation ratio");
    expect(plotSweep(golden, "ratio", "time")).toContain("elapsed ms");
  });

  it("plots mean-over-seeds y values, never invented numbers", () => {
    // two seeds per (motif, n); qaoa cascade n=16 rows average to their mean
    const rows = golden
      .trim()
      .split("\n")
      .slice(1)
      .map((l) => l.split(","))
      .filter((c) => c[1] === "cascade" && c[2] === "qaoa" && c[3] === "16");
    expect(rows.length).toBe(2);
    const meanCount =
      rows.reduce((s, c) => s + Number(c[6]), 0) / rows.length;
    expect(Number.isFinite(meanCount)).toBe(true);
  });
});

describe("plotZscore", () => {
  it("is deterministic and draws one bar per run", () => {
    const a = plotZscore(zscoreGolden);
    expect(a).toBe(plotZscore(zscoreGolden));
    expect(a.match(/<rect x=/g)?.length).toBe(4);
    expect(a).toContain("plantedA");
    expect(a).toContain("z-score");
  });

  it("refuses a compare CSV", () => {
    expect(() => plotZscore(golden)).toThrow(/expected columns/);
  });
});
