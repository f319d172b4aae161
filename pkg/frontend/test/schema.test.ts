import { readFileSync } from "fs";
import { describe, expect, it } from "vitest";
import {
  parseCompareCsv,
  parseZscoreCsv,
  SchemaError,
  COMPARE_COLUMNS,
} from "../src/schema.js";

const fixture = (name: string) =>
  readFileSync(new URL(`./fixtures/${name}`, import.meta.url), "utf-8");

describe("compare CSV schema", () => {
  it("parses the golden fixture", () => {
    const rows = parseCompareCsv(fixture("compare_golden.csv"));
    expect(rows.length).toBe(48);
    const r = rows[0];
    expect(r.instance).toBe("n16_d2_r0.8_cascade_p2_s0");
    expect(r.solver).toBe("qaoa");
    expect(r.n).toBe(16);
    expect(r.d).toBeCloseTo(2.0);
    expect(r.r_act).toBeCloseTo(0.8);
    expect(Number.isInteger(r.motif_count)).toBe(true);
    // every builtin motif and both solvers appear
    expect(new Set(rows.map((x) => x.motif))).toEqual(
      new Set(["cascade", "ffl", "bifan", "biparallel"]),
    );
    expect(new Set(rows.map((x) => x.solver))).toEqual(new Set(["qaoa", "baseline"]));
  });

  it("rejects a missing column, naming the header", () => {
    const text = fixture("compare_golden.csv")
      .split("\n")
      .map((line) => line.split(",").slice(0, -1).join(","))
      .join("\n");
    expect(() => parseCompareCsv(text)).toThrow(SchemaError);
    expect(() => parseCompareCsv(text)).toThrow(/expected columns/);
  });

  it("rejects a non-numeric cell, naming row and column", () => {
    const lines = fixture("compare_golden.csv").split("\n");
    const cells = lines[3].split(",");
    cells[COMPARE_COLUMNS.indexOf("motif_count")] = "lots";
    lines[3] = cells.join(",");
    const bad = lines.join("\n");
    expect(() => parseCompareCsv(bad)).toThrow(/row 4, column 'motif_count'/);
  });

  it("rejects an unknown solver value", () => {
    const lines = fixture("compare_golden.csv").split("\n");
    lines[1] = lines[1].replace(",qaoa,", ",annealer,");
    expect(() => parseCompareCsv(lines.join("\n"))).toThrow(/column 'solver'/);
  });

  it("rejects an out-of-range activation ratio", () => {
    const lines = fixture("compare_golden.csv").split("\n");
    lines[1] = lines[1].replace(",0.8,", ",1.8,");
    expect(() => parseCompareCsv(lines.join("\n"))).toThrow(/column 'r_act'/);
  });

  it("rejects empty input and header-only input", () => {
    expect(() => parseCompareCsv("")).toThrow(/empty file/);
    expect(() => parseCompareCsv(COMPARE_COLUMNS.join(",") + "\n")).toThrow(/no data rows/);
  });
});

describe("zscore CSV schema", () => {
  it("parses the golden fixture", () => {
    const rows = parseZscoreCsv(fixture("zscore_golden.csv"));
    expect(rows.length).toBe(4);
    expect(rows[0]).toMatchObject({
      network: "plantedA",
      motif: "ffl",
      observed: 6,
      N: 20,
      null_model: "degree",
      classification: "over",
    });
    expect(rows[0].z).toBeCloseTo(9.1765);
    expect(rows[3].classification).toBe("neutral");
  });

  it("rejects a compare CSV, loudly", () => {
    expect(() => parseZscoreCsv(fixture("compare_golden.csv"))).toThrow(/expected columns/);
  });

  it("rejects an unknown classification", () => {
    const lines = fixture("zscore_golden.csv").split("\n");
    lines[1] = lines[1].replace(",over,", ",wild,");
    expect(() => parseZscoreCsv(lines.join("\n"))).toThrow(/column 'classification'/);
  });
});
