#!/usr/bin/env node
/**
 * plot-sweep: render figures from CSV reports.
 *
 *   plot-sweep <compare.csv> --group-by nodes --out fig.svg
 *   plot-sweep <compare.csv> --group-by density --metric time --out fig.svg
 *   plot-sweep <zscore.csv> --zscore --out fig.svg
 *
 * Exit codes: 0 ok, 1 usage, 2 unreadable or schema-violating input.
 */
import { readFileSync, writeFileSync } from "fs";
import yargs from "yargs";
import { hideBin } from "yargs/helpers";
import { plotSweep, plotZscore } from "./plot.js";
import { SchemaError } from "./schema.js";
import type { GroupBy, Metric } from "./aggregate.js";

async function main(argv: string[]): Promise<number> {
  const args = await yargs(argv)
    .usage("plot-sweep <csv> [options]")
    .command("$0 <csv>", "render an SVG figure from a CSV report", (y) =>
      y.positional("csv", { type: "string", demandOption: true, describe: "input CSV path" }),
    )
    .option("group-by", {
      choices: ["nodes", "density", "ratio"] as const,
      describe: "sweep axis (compare CSV)",
    })
    .option("metric", {
      choices: ["count", "time"] as const,
      default: "count" as const,
      describe: "y value (compare CSV)",
    })
    .option("zscore", {
      type: "boolean",
      default: false,
      describe: "input is a zscore CSV; renders significance bars",
    })
    .option("out", { type: "string", demandOption: true, describe: "output SVG path" })
    .strict()
    .fail((msg, err) => {
      if (err) throw err;
      process.stderr.write(`plot-sweep: error: ${msg}\n`);
      process.exit(1);
    })
    .parse();

  const csvPath = args.csv as string;
  let csvText: string;
  try {
    csvText = readFileSync(csvPath, "utf-8");
  } catch (e) {
    process.stderr.write(`plot-sweep: error: ${(e as Error).message}\n`);
    return 2;
  }

  let svg: string;
  try {
    if (args.zscore) {
      svg = plotZscore(csvText);
    } else {
      if (!args.groupBy) {
        process.stderr.write("plot-sweep: error: --group-by is required for compare CSVs\n");
        return 1;
      }
      svg = plotSweep(csvText, args.groupBy as GroupBy, args.metric as Metric);
    }
  } catch (e) {
    if (e instanceof SchemaError) {
      process.stderr.write(`plot-sweep: error: ${e.message}\n`);
      return 2;
    }
    throw e;
  }

  writeFileSync(args.out, svg);
  process.stdout.write(`${args.out}\n`);
  return 0;
}

main(hideBin(process.argv)).then(
  (code) => process.exit(code),
  (err) => {
    process.stderr.write(`plot-sweep: error: ${err?.message ?? err}\n`);
    process.exit(2);
  },
);
