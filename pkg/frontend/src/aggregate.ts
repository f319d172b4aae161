/**
 * Turn compare rows into per-motif plot series.
 *
 * The only computation allowed here is averaging the chosen metric over
 * rows that share (motif, solver, x); everything plotted must otherwise
 * be a number the producing run wrote down.
 */
import type { CompareRow } from "./schema.js";

export type GroupBy = "nodes" | "density" | "ratio";
export type Metric = "count" | "time";

export const GROUP_COLUMN: Record<GroupBy, keyof CompareRow> = {
  nodes: "n",
  density: "d",
  ratio: "r_act",
};

export const METRIC_COLUMN: Record<Metric, keyof CompareRow> = {
  count: "motif_count",
  time: "elapsed_ms",
};

// solver order fixes series color and legend position
export const SOLVER_ORDER = ["qaoa", "baseline", "exact"] as const;

export interface Series {
  solver: string;
  points: { x: number; y: number }[]; // x ascending, y = mean over seeds
}

export interface Panel {
  motif: string;
  series: Series[];
}

export function aggregate(rows: CompareRow[], groupBy: GroupBy, metric: Metric): Panel[] {
  const xKey = GROUP_COLUMN[groupBy];
  const yKey = METRIC_COLUMN[metric];

  // motif -> solver -> x -> list of y
  const acc = new Map<string, Map<string, Map<number, number[]>>>();
  for (const row of rows) {
    const x = row[xKey] as number;
    const y = row[yKey] as number;
    let bySolver = acc.get(row.motif);
    if (!bySolver) acc.set(row.motif, (bySolver = new Map()));
    let byX = bySolver.get(row.solver);
    if (!byX) bySolver.set(row.solver, (byX = new Map()));
    const ys = byX.get(x);
    if (ys) ys.push(y);
    else byX.set(x, [y]);
  }

  const motifs = [...acc.keys()].sort();
  return motifs.map((motif) => {
    const bySolver = acc.get(motif)!;
    const solvers = [...bySolver.keys()].sort(
      (a, b) => solverRank(a) - solverRank(b) || a.localeCompare(b),
    );
    const series = solvers.map((solver) => {
      const byX = bySolver.get(solver)!;
      const points = [...byX.entries()]
        .map(([x, ys]) => ({ x, y: mean(ys) }))
        .sort((a, b) => a.x - b.x);
      return { solver, points };
    });
    return { motif, series };
  });
}

function solverRank(s: string): number {
  const i = SOLVER_ORDER.indexOf(s as (typeof SOLVER_ORDER)[number]);
  return i === -1 ? SOLVER_ORDER.length : i;
}

function mean(xs: number[]): number {
  let s = 0;
  for (const x of xs) s += x;
  return s / xs.length;
}
