/**
 * Row schemas for the two CSV report formats this package consumes.
 *
 * Columns and their order are fixed by the producing CLI; anything that
 * deviates (missing column, extra column, unparseable cell) is a hard
 * error carrying the row number and field so the bad file is obvious.
 */
import Papa from "papaparse";
import { z } from "zod";

export const COMPARE_COLUMNS = [
  "instance", "motif", "solver", "n", "d", "r_act",
  "motif_count", "AC", "RC", "UC", "elapsed_ms", "seed",
] as const;

export const ZSCORE_COLUMNS = [
  "network", "motif", "observed", "null_mean", "null_std",
  "z", "N", "null_model", "classification", "seed",
] as const;

// numbers arrive as strings from the CSV layer
const int = z.coerce.number().int();
const num = z.coerce.number().finite();

export const compareRowSchema = z.object({
  instance: z.string().min(1),
  motif: z.string().min(1),
  solver: z.enum(["qaoa", "baseline", "exact"]),
  n: int.positive(),
  d: num.positive(),
  r_act: num.min(0).max(1),
  motif_count: int.min(0),
  AC: int.min(0),
  RC: int.min(0),
  UC: int.min(0),
  elapsed_ms: num.min(0),
  seed: int,
});

export const zscoreRowSchema = z.object({
  network: z.string().min(1),
  motif: z.string().min(1),
  observed: int.min(0),
  null_mean: num,
  null_std: num.min(0),
  z: num,
  N: int.min(2),
  null_model: z.enum(["degree", "uniform"]),
  classification: z.enum(["over", "under", "neutral"]),
  seed: int,
});

export type CompareRow = z.infer<typeof compareRowSchema>;
export type ZscoreRow = z.infer<typeof zscoreRowSchema>;

export class SchemaError extends Error {}

function parseRows<T>(
  csvText: string,
  columns: readonly string[],
  rowSchema: z.ZodType<T, z.ZodTypeDef, unknown>,
  label: string,
): T[] {
  if (csvText.trim() === "") {
    throw new SchemaError(`${label} CSV: empty file`);
  }
  const parsed = Papa.parse<Record<string, string>>(csvText.trim(), {
    header: true,
    skipEmptyLines: true,
  });
  if (parsed.errors.length > 0) {
    const e = parsed.errors[0];
    throw new SchemaError(`${label} CSV: ${e.message} (row ${e.row ?? "?"})`);
  }

  const header = parsed.meta.fields ?? [];
  if (header.join(",") !== columns.join(",")) {
    throw new SchemaError(
      `${label} CSV: expected columns [${columns.join(",")}], got [${header.join(",")}]`,
    );
  }
  if (parsed.data.length === 0) {
    throw new SchemaError(`${label} CSV: no data rows`);
  }

  return parsed.data.map((raw, i) => {
    const res = rowSchema.safeParse(raw);
    if (!res.success) {
      const issue = res.error.issues[0];
      const field = issue.path.join(".") || "?";
      // +2: 1-based and past the header line
      throw new SchemaError(
        `${label} CSV row ${i + 2}, column '${field}': ${issue.message}`,
      );
    }
    return res.data;
  });
}

export function parseCompareCsv(csvText: string): CompareRow[] {
  return parseRows(csvText, COMPARE_COLUMNS, compareRowSchema, "compare");
}

export function parseZscoreCsv(csvText: string): ZscoreRow[] {
  return parseRows(csvText, ZSCORE_COLUMNS, zscoreRowSchema, "zscore");
}
