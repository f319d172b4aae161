/**
 * Hand-rolled SVG output. No plotting library so the bytes depend only
 * on the input rows: fixed palette, fixed layout, no timestamps, no ids
 * derived from anything but position.
 */
import type { Panel } from "./aggregate.js";
import type { ZscoreRow } from "./schema.js";

const PALETTE: Record<string, string> = {
  qaoa: "#4361ee",
  baseline: "#e63946",
  exact: "#2d6a4f",
};
const FALLBACK_COLOR = "#9d4edd";

const FONT = "Helvetica, Arial, sans-serif";

export function seriesColor(solver: string): string {
  return PALETTE[solver] ?? FALLBACK_COLOR;
}

function esc(s: string): string {
  return s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

function fmt(v: number): string {
  if (v === 0) return "0";
  if (Number.isInteger(v) && Math.abs(v) < 1e7) return String(v);
  const a = Math.abs(v);
  if (a >= 1000) return v.toFixed(0);
  if (a >= 1) return String(Number(v.toFixed(2)));
  return String(Number(v.toPrecision(2)));
}

function niceTicks(min: number, max: number, count: number): number[] {
  const range = max - min || 1;
  const rough = range / count;
  const mag = Math.pow(10, Math.floor(Math.log10(rough)));
  const step = [1, 2, 5, 10].map((m) => m * mag).find((n) => n >= rough) ?? rough;
  const start = Math.ceil(min / step) * step;
  const ticks: number[] = [];
  for (let v = start; v <= max + step * 0.01; v += step) {
    ticks.push(Math.abs(v) < step * 1e-9 ? 0 : v);
  }
  return ticks;
}

// ---------------------------------------------------------------------------
// Sweep figure: one panel per motif, laid out on a 2-column grid
// ---------------------------------------------------------------------------

export interface SweepStyle {
  xLabel: string;
  yLabel: string;
  title: string;
}

const PW = 330;  // panel cell width
const PH = 230;  // panel cell height
const ML = 46, MR = 14, MT = 26, MB = 34; // margins inside a cell

export function renderSweep(panels: Panel[], style: SweepStyle): string {
  if (panels.length === 0) throw new Error("no panels to render");
  const cols = Math.min(2, panels.length);
  const rowsN = Math.ceil(panels.length / cols);
  const W = cols * PW + 20;
  const H = rowsN * PH + 46;

  let s = `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${W} ${H}" font-family="${FONT}">\n`;
  s += `<rect width="${W}" height="${H}" fill="#fff"/>\n`;
  s += `<text x="${W / 2}" y="16" text-anchor="middle" font-size="12" font-weight="600" fill="#222">${esc(style.title)}</text>\n`;

  // figure-level legend under the title
  const solvers = [...new Set(panels.flatMap((p) => p.series.map((sr) => sr.solver)))];
  let lx = W / 2 - solvers.length * 45;
  for (const solver of solvers) {
    const c = seriesColor(solver);
    s += `<line x1="${lx}" y1="27" x2="${lx + 16}" y2="27" stroke="${c}" stroke-width="1.5"/>\n`;
    s += `<circle cx="${lx + 8}" cy="27" r="2" fill="${c}"/>\n`;
    s += `<text x="${lx + 20}" y="30" font-size="9" fill="#444">${esc(solver)}</text>\n`;
    lx += 90;
  }

  panels.forEach((panel, idx) => {
    const ox = (idx % cols) * PW + 10;
    const oy = Math.floor(idx / cols) * PH + 40;
    s += panelSvg(panel, ox, oy, style, idx);
  });

  s += `</svg>\n`;
  return s;
}

function panelSvg(panel: Panel, ox: number, oy: number, style: SweepStyle, idx: number): string {
  const pw = PW - ML - MR;
  const ph = PH - MT - MB;
  const left = ox + ML, top = oy + MT;

  const xs = panel.series.flatMap((sr) => sr.points.map((p) => p.x));
  const ys = panel.series.flatMap((sr) => sr.points.map((p) => p.y));
  const xMin = Math.min(...xs), xMax = Math.max(...xs);
  const yMax = Math.max(...ys, 1e-9) * 1.08;
  const yMin = 0; // counts and times both start at zero

  const xOf = (v: number) => left + ((v - xMin) / (xMax - xMin || 1)) * pw;
  const yOf = (v: number) => top + ph - ((v - yMin) / (yMax - yMin)) * ph;

  let s = `<text x="${ox + PW / 2}" y="${oy + 16}" text-anchor="middle" font-size="10" font-weight="600" fill="#222">${esc(panel.motif)}</text>\n`;

  const yTicks = niceTicks(yMin, yMax, 4);
  for (const v of yTicks) {
    const y = yOf(v);
    s += `<line x1="${left}" y1="${y.toFixed(1)}" x2="${left + pw}" y2="${y.toFixed(1)}" stroke="#eee" stroke-width="0.5"/>\n`;
    s += `<text x="${left - 4}" y="${(y + 3).toFixed(1)}" text-anchor="end" font-size="7" fill="#666">${esc(fmt(v))}</text>\n`;
  }

  const xTickVals = [...new Set(xs)].sort((a, b) => a - b);
  const xTicks = xTickVals.length <= 7 ? xTickVals : niceTicks(xMin, xMax, 6);
  for (const v of xTicks) {
    const x = xOf(v);
    s += `<line x1="${x.toFixed(1)}" y1="${top + ph}" x2="${x.toFixed(1)}" y2="${top + ph + 3}" stroke="#333" stroke-width="0.5"/>\n`;
    s += `<text x="${x.toFixed(1)}" y="${top + ph + 12}" text-anchor="middle" font-size="7" fill="#666">${esc(fmt(v))}</text>\n`;
  }

  // clip per panel; id depends only on panel index
  s += `<defs><clipPath id="p${idx}"><rect x="${left}" y="${top}" width="${pw}" height="${ph}"/></clipPath></defs>\n`;

  for (const sr of panel.series) {
    const c = seriesColor(sr.solver);
    const pts = sr.points.map((p) => `${xOf(p.x).toFixed(1)},${yOf(p.y).toFixed(1)}`).join(" ");
    s += `<polyline clip-path="url(#p${idx})" fill="none" stroke="${c}" stroke-width="1.2" points="${pts}"/>\n`;
    for (const p of sr.points) {
      s += `<circle cx="${xOf(p.x).toFixed(1)}" cy="${yOf(p.y).toFixed(1)}" r="2" fill="${c}"/>\n`;
    }
  }

  s += `<line x1="${left}" y1="${top}" x2="${left}" y2="${top + ph}" stroke="#333" stroke-width="0.7"/>\n`;
  s += `<line x1="${left}" y1="${top + ph}" x2="${left + pw}" y2="${top + ph}" stroke="#333" stroke-width="0.7"/>\n`;
  s += `<text x="${ox + PW / 2}" y="${oy + PH - 8}" text-anchor="middle" font-size="8" fill="#444">${esc(style.xLabel)}</text>\n`;
  s += `<text x="${ox + 10}" y="${top + ph / 2}" text-anchor="middle" font-size="8" fill="#444" transform="rotate(-90,${ox + 10},${top + ph / 2})">${esc(style.yLabel)}</text>\n`;
  return s;
}

// ---------------------------------------------------------------------------
// Significance figure: one bar per (network, motif) run, z on the y-axis
// ---------------------------------------------------------------------------

const CLASS_COLOR: Record<string, string> = {
  over: "#e63946",
  under: "#4361ee",
  neutral: "#999",
};

export function renderZscore(rows: ZscoreRow[]): string {
  const bars = [...rows].sort(
    (a, b) => a.network.localeCompare(b.network) || a.motif.localeCompare(b.motif),
  );

  const W = Math.max(360, 90 + bars.length * 58);
  const H = 300;
  const ml = 50, mr = 16, mt = 34, mb = 64;
  const pw = W - ml - mr, ph = H - mt - mb;

  const zs = bars.map((b) => b.z);
  const zMax = Math.max(...zs, 2.5) * 1.1;
  const zMin = Math.min(...zs, -2.5) * 1.1;
  const yOf = (v: number) => mt + ph - ((v - zMin) / (zMax - zMin)) * ph;

  let s = `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${W} ${H}" font-family="${FONT}">\n`;
  s += `<rect width="${W}" height="${H}" fill="#fff"/>\n`;
  s += `<text x="${W / 2}" y="18" text-anchor="middle" font-size="12" font-weight="600" fill="#222">Motif significance vs null model</text>\n`;

  for (const v of niceTicks(zMin, zMax, 6)) {
    const y = yOf(v);
    s += `<line x1="${ml}" y1="${y.toFixed(1)}" x2="${ml + pw}" y2="${y.toFixed(1)}" stroke="#eee" stroke-width="0.5"/>\n`;
    s += `<text x="${ml - 4}" y="${(y + 3).toFixed(1)}" text-anchor="end" font-size="7" fill="#666">${esc(fmt(v))}</text>\n`;
  }
  // significance thresholds
  for (const v of [2, -2]) {
    const y = yOf(v);
    s += `<line x1="${ml}" y1="${y.toFixed(1)}" x2="${ml + pw}" y2="${y.toFixed(1)}" stroke="#888" stroke-width="0.8" stroke-dasharray="5,3"/>\n`;
  }
  s += `<text x="${ml + pw - 2}" y="${(yOf(2) - 3).toFixed(1)}" text-anchor="end" font-size="6.5" fill="#888">z = 2</text>\n`;

  const slot = pw / bars.length;
  const bw = Math.min(34, slot * 0.6);
  const y0 = yOf(0);
  bars.forEach((b, i) => {
    const xc = ml + slot * (i + 0.5);
    const yb = yOf(b.z);
    const top = Math.min(yb, y0), hgt = Math.abs(yb - y0);
    const c = CLASS_COLOR[b.classification] ?? FALLBACK_COLOR;
    s += `<rect x="${(xc - bw / 2).toFixed(1)}" y="${top.toFixed(1)}" width="${bw.toFixed(1)}" height="${Math.max(hgt, 0.5).toFixed(1)}" fill="${c}" opacity="0.85"/>\n`;
    s += `<text x="${xc.toFixed(1)}" y="${(top - 3 < mt + 8 ? top + 10 : top - 3).toFixed(1)}" text-anchor="middle" font-size="6.5" fill="#333">${esc(fmt(b.z))}</text>\n`;
    s += `<text x="${xc.toFixed(1)}" y="${mt + ph + 12}" text-anchor="middle" font-size="7" fill="#444">${esc(b.motif)}</text>\n`;
    s += `<text x="${xc.toFixed(1)}" y="${mt + ph + 22}" text-anchor="middle" font-size="6.5" fill="#888">${esc(b.network)}</text>\n`;
    s += `<text x="${xc.toFixed(1)}" y="${mt + ph + 32}" text-anchor="middle" font-size="6" fill="#aaa">N=${b.N} ${esc(b.null_model)}</text>\n`;
  });

  s += `<line x1="${ml}" y1="${y0.toFixed(1)}" x2="${ml + pw}" y2="${y0.toFixed(1)}" stroke="#333" stroke-width="0.7"/>\n`;
  s += `<line x1="${ml}" y1="${mt}" x2="${ml}" y2="${mt + ph}" stroke="#333" stroke-width="0.7"/>\n`;
  s += `<text x="14" y="${mt + ph / 2}" text-anchor="middle" font-size="8" fill="#444" transform="rotate(-90,14,${mt + ph / 2})">z-score</text>\n`;
  s += `</svg>\n`;
  return s;
}
