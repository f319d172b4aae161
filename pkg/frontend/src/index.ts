export { plotSweep, plotZscore } from "./plot.js";
export { aggregate, SOLVER_ORDER } from "./aggregate.js";
export type { GroupBy, Metric, Panel, Series } from "./aggregate.js";
export {
  parseCompareCsv,
  parseZscoreCsv,
  SchemaError,
  COMPARE_COLUMNS,
  ZSCORE_COLUMNS,
} from "./schema.js";
export type { CompareRow, ZscoreRow } from "./schema.js";
export { renderSweep, renderZscore, seriesColor } from "./svg.js";
