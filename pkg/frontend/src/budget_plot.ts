/** Log-log noise-budget figure from the budget CSV and band report. */

import { BudgetFormatError, BudgetTable, parseBudgetCsv, requireColumn } from "./csv.js";
import { decadeLabel, decadeTicks, interpolateLogLog, makeLogScale } from "./scale.js";
import { document as svgDocument, polylinePath, tag, text } from "./svg.js";

export interface CurveStyle {
  label: string;
  stroke: string;
  dash?: string;
  width?: number;
}

export interface BandReportJson {
  f_force_cross_hz: number | null;
  f_sensing_cross_hz: number | null;
  f_backaction_cross_hz: number | null;
  [key: string]: unknown;
}

/** The seven curves of the reference figure; free-mass SQL is dashed. */
export const DEFAULT_CURVE_STYLES: CurveStyle[] = [
  { label: "fmSQL", stroke: "#555555", dash: "8 5" },
  { label: "hoSQL", stroke: "#000000", width: 2 },
  { label: "shot", stroke: "#1f77b4" },
  { label: "backaction", stroke: "#d62728" },
  { label: "pendulum_thermal", stroke: "#2ca02c" },
  { label: "sensing", stroke: "#9467bd" },
  { label: "total_quantum", stroke: "#ff7f0e" },
];

const WIDTH = 960;
const HEIGHT = 640;
const MARGIN = { left: 90, right: 210, top: 50, bottom: 70 };

interface Series {
  style: CurveStyle;
  frequencies: number[];
  asd: number[];
}

function asdSeries(table: BudgetTable, style: CurveStyle): Series {
  const psd = requireColumn(table, style.label);
  const frequencies: number[] = [];
  const asd: number[] = [];
  for (let i = 0; i < psd.length; i++) {
    if (psd[i] > 0) {
      frequencies.push(table.frequencies[i]);
      asd.push(Math.sqrt(psd[i]));
    }
  }
  if (asd.length === 0) {
    throw new BudgetFormatError(`curve '${style.label}' has no positive samples to plot`);
  }
  return { style, frequencies, asd };
}

export function renderBudget(
  csvText: string,
  bandJson?: string,
  styles: CurveStyle[] = DEFAULT_CURVE_STYLES,
): string {
  const table = parseBudgetCsv(csvText);
  const series = styles.map((style) => asdSeries(table, style));

  const fMin = table.frequencies[0];
  const fMax = table.frequencies[table.frequencies.length - 1];
  let yMin = Number.POSITIVE_INFINITY;
  let yMax = 0;
  for (const s of series) {
    for (const value of s.asd) {
      yMin = Math.min(yMin, value);
      yMax = Math.max(yMax, value);
    }
  }
  // pad to full decades so tick labels bracket the data
  yMin = 10 ** Math.floor(Math.log10(yMin));
  yMax = 10 ** Math.ceil(Math.log10(yMax));

  const x = makeLogScale(fMin, fMax, MARGIN.left, WIDTH - MARGIN.right);
  const y = makeLogScale(yMin, yMax, HEIGHT - MARGIN.bottom, MARGIN.top);

  const children: string[] = [];
  children.push(tag("rect", {
    x: MARGIN.left,
    y: MARGIN.top,
    width: WIDTH - MARGIN.left - MARGIN.right,
    height: HEIGHT - MARGIN.top - MARGIN.bottom,
    fill: "#ffffff",
    stroke: "#000000",
    "stroke-width": 1,
  }));

  for (const tick of decadeTicks(fMin, fMax)) {
    const px = x.toPixel(tick);
    children.push(tag("line", {
      x1: px, y1: MARGIN.top, x2: px, y2: HEIGHT - MARGIN.bottom,
      stroke: "#dddddd", "stroke-width": 1, class: "grid",
    }));
    children.push(text(decadeLabel(tick), {
      x: px, y: HEIGHT - MARGIN.bottom + 22, "text-anchor": "middle",
      "font-family": "sans-serif", "font-size": 14,
    }));
  }
  for (const tick of decadeTicks(yMin, yMax)) {
    const py = y.toPixel(tick);
    children.push(tag("line", {
      x1: MARGIN.left, y1: py, x2: WIDTH - MARGIN.right, y2: py,
      stroke: "#dddddd", "stroke-width": 1, class: "grid",
    }));
    children.push(text(decadeLabel(tick), {
      x: MARGIN.left - 8, y: py + 5, "text-anchor": "end",
      "font-family": "sans-serif", "font-size": 14,
    }));
  }

  for (const s of series) {
    const points = s.frequencies.map(
      (f, i) => [x.toPixel(f), y.toPixel(s.asd[i])] as [number, number],
    );
    const attributes: Record<string, string | number> = {
      d: polylinePath(points),
      fill: "none",
      stroke: s.style.stroke,
      "stroke-width": s.style.width ?? 1.5,
      class: "curve",
      "data-label": s.style.label,
    };
    if (s.style.dash) {
      attributes["stroke-dasharray"] = s.style.dash;
    }
    children.push(tag("path", attributes));
  }

  if (bandJson !== undefined) {
    children.push(...crossingMarkers(table, bandJson, x, y));
  }

  // legend
  series.forEach((s, i) => {
    const ly = MARGIN.top + 16 + 22 * i;
    children.push(tag("line", {
      x1: WIDTH - MARGIN.right + 14, y1: ly, x2: WIDTH - MARGIN.right + 44, y2: ly,
      stroke: s.style.stroke, "stroke-width": s.style.width ?? 1.5,
      ...(s.style.dash ? { "stroke-dasharray": s.style.dash } : {}),
    }));
    children.push(text(s.style.label, {
      x: WIDTH - MARGIN.right + 50, y: ly + 5,
      "font-family": "sans-serif", "font-size": 14, class: "legend",
    }));
  });

  children.push(text("frequency (Hz)", {
    x: (MARGIN.left + WIDTH - MARGIN.right) / 2, y: HEIGHT - 18,
    "text-anchor": "middle", "font-family": "sans-serif", "font-size": 16,
  }));
  children.push(text("displacement ASD (m/√Hz)", {
    x: 22, y: (MARGIN.top + HEIGHT - MARGIN.bottom) / 2, "text-anchor": "middle",
    "font-family": "sans-serif", "font-size": 16,
    transform: `rotate(-90 22 ${(MARGIN.top + HEIGHT - MARGIN.bottom) / 2})`,
  }));
  children.push(text("displacement noise budget", {
    x: (MARGIN.left + WIDTH - MARGIN.right) / 2, y: 30, "text-anchor": "middle",
    "font-family": "sans-serif", "font-size": 18, "font-weight": "bold",
  }));

  return svgDocument(WIDTH, HEIGHT, children);
}

function crossingMarkers(
  table: BudgetTable,
  bandJson: string,
  x: ReturnType<typeof makeLogScale>,
  y: ReturnType<typeof makeLogScale>,
): string[] {
  let report: BandReportJson;
  try {
    report = JSON.parse(bandJson) as BandReportJson;
  } catch (error) {
    throw new BudgetFormatError(`band report is not valid JSON: ${String(error)}`);
  }
  const hosql = requireColumn(table, "hoSQL");
  const markers: string[] = [];
  const crossings: Array<[string, number | null]> = [
    ["force", report.f_force_cross_hz],
    ["backaction", report.f_backaction_cross_hz],
    ["sensing", report.f_sensing_cross_hz],
  ];
  for (const [name, frequency] of crossings) {
    if (frequency === null || frequency === undefined) continue;
    if (frequency < table.frequencies[0] || frequency > table.frequencies[table.frequencies.length - 1]) {
      continue;
    }
    const asd = Math.sqrt(interpolateLogLog(table.frequencies, hosql, frequency));
    markers.push(tag("circle", {
      cx: x.toPixel(frequency),
      cy: y.toPixel(asd),
      r: 6,
      fill: "none",
      stroke: "#000000",
      "stroke-width": 2,
      class: "crossing-marker",
      "data-crossing": name,
    }));
  }
  return markers;
}
