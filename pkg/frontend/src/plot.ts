/** Pure CSV-text to SVG-text entry points; the CLI only adds file IO. */
import { aggregate, GROUP_COLUMN, METRIC_COLUMN } from "./aggregate.js";
import type { GroupBy, Metric } from "./aggregate.js";
import { parseCompareCsv, parseZscoreCsv } from "./schema.js";
import { renderSweep, renderZscore } from "./svg.js";

const X_LABEL: Record<GroupBy, string> = {
  nodes: "nodes (n)",
  density: "average degree (d)",
  ratio: "activation ratio",
};

const Y_LABEL: Record<Metric, string> = {
  count: "motif count (mean over seeds)",
  time: "elapsed ms (mean over seeds)",
};

export function plotSweep(csvText: string, groupBy: GroupBy, metric: Metric = "count"): string {
  const rows = parseCompareCsv(csvText);
  const panels = aggregate(rows, groupBy, metric);
  return renderSweep(panels, {
    xLabel: X_LABEL[groupBy],
    yLabel: Y_LABEL[metric],
    title: `${METRIC_COLUMN[metric]} by ${GROUP_COLUMN[groupBy]}, per motif`,
  });
}

export function plotZscore(csvText: string): string {
  return renderZscore(parseZscoreCsv(csvText));
}
