/** Phase-space uncertainty-ellipse figures from the report JSON files.
 *
 * Accepts either the `fig1` payload (a two-mode state: per-mode marginals
 * plus the squeezed collective sum/difference modes are drawn) or the
 * `entangle` payload (common and differential conditional ellipses). The
 * dashed unit circle is the vacuum uncertainty (variance 1/2, 1-sigma
 * radius 1/sqrt(2)).
 */

import { document as svgDocument, tag, text } from "./svg.js";

export class EllipseInputError extends Error {}

export interface EllipseGeometry {
  /** 1-sigma semi-axes, major first */
  rMajor: number;
  rMinor: number;
  /** orientation of the major axis, radians CCW from the x axis */
  angle: number;
}

type Cov2 = [[number, number], [number, number]];

/** Closed-form eigendecomposition of a symmetric 2x2 covariance matrix. */
export function ellipseFromCov(cov: Cov2): EllipseGeometry {
  const [[a, b], [, c]] = cov;
  const trace = a + c;
  const diff = a - c;
  const radius = Math.sqrt(diff * diff + 4 * b * b);
  const lamMax = (trace + radius) / 2;
  const lamMin = (trace - radius) / 2;
  if (!(lamMin > 0)) {
    throw new EllipseInputError(`covariance is not positive definite: ${JSON.stringify(cov)}`);
  }
  return {
    rMajor: Math.sqrt(lamMax),
    rMinor: Math.sqrt(lamMin),
    angle: 0.5 * Math.atan2(2 * b, diff),
  };
}

export interface LabelledEllipse {
  label: string;
  cov: Cov2;
}

function asCov2(raw: unknown, context: string): Cov2 {
  if (
    !Array.isArray(raw) || raw.length !== 2 ||
    !Array.isArray(raw[0]) || raw[0].length !== 2 ||
    !Array.isArray(raw[1]) || raw[1].length !== 2
  ) {
    throw new EllipseInputError(`${context}: expected a 2x2 covariance matrix`);
  }
  return raw as Cov2;
}

function block(cov4: number[][], i: number, j: number): Cov2 {
  return [
    [cov4[2 * i][2 * j], cov4[2 * i][2 * j + 1]],
    [cov4[2 * i + 1][2 * j], cov4[2 * i + 1][2 * j + 1]],
  ];
}

/** Extract the ellipses to draw from a report payload. */
export function ellipsesFromReport(reportJson: string): LabelledEllipse[] {
  let payload: Record<string, unknown>;
  try {
    payload = JSON.parse(reportJson) as Record<string, unknown>;
  } catch (error) {
    throw new EllipseInputError(`report is not valid JSON: ${String(error)}`);
  }

  if (payload.common !== undefined && payload.differential !== undefined) {
    const common = payload.common as { cov?: unknown };
    const differential = payload.differential as { cov?: unknown };
    return [
      { label: "common", cov: asCov2(common.cov, "common.cov") },
      { label: "differential", cov: asCov2(differential.cov, "differential.cov") },
    ];
  }

  const state = (payload.state ?? (payload.two_mirror as Record<string, unknown>)?.state) as
    | { cov?: number[][] }
    | undefined;
  if (state?.cov !== undefined) {
    const cov = state.cov;
    if (!Array.isArray(cov) || cov.length !== 4) {
      throw new EllipseInputError("state covariance must be 4x4 (two modes)");
    }
    // marginals plus the symmetric/antisymmetric collective modes, whose
    // squeezing encodes the entanglement
    const sum: Cov2 = [[0, 0], [0, 0]];
    const diff: Cov2 = [[0, 0], [0, 0]];
    const aa = block(cov, 0, 0);
    const bb = block(cov, 1, 1);
    const ab = block(cov, 0, 1);
    for (let r = 0; r < 2; r++) {
      for (let s = 0; s < 2; s++) {
        sum[r][s] = (aa[r][s] + bb[r][s] + ab[r][s] + ab[s][r]) / 2;
        diff[r][s] = (aa[r][s] + bb[r][s] - ab[r][s] - ab[s][r]) / 2;
      }
    }
    return [
      { label: "mode A", cov: aa },
      { label: "mode B", cov: bb },
      { label: "(A+B)/√2", cov: sum },
      { label: "(A−B)/√2", cov: diff },
    ];
  }

  throw new EllipseInputError(
    "report contains neither a two-mode state nor common/differential covariances",
  );
}

const PANEL = 300;
const PAD = 20;
const VACUUM_RADIUS = Math.sqrt(0.5);

export function renderEllipses(reportJson: string): string {
  const ellipses = ellipsesFromReport(reportJson);
  const columns = Math.min(ellipses.length, 2);
  const rows = Math.ceil(ellipses.length / columns);
  const width = columns * PANEL + 2 * PAD;
  const height = rows * PANEL + 2 * PAD + 10;

  // one shared scale so panel sizes are comparable
  let maxRadius = VACUUM_RADIUS;
  const geometries = ellipses.map((e) => {
    const geometry = ellipseFromCov(e.cov);
    maxRadius = Math.max(maxRadius, geometry.rMajor);
    return geometry;
  });
  const pixelsPerUnit = (PANEL / 2 - 30) / maxRadius;

  const children: string[] = [];
  ellipses.forEach((entry, index) => {
    const col = index % columns;
    const row = Math.floor(index / columns);
    const cx = PAD + col * PANEL + PANEL / 2;
    const cy = PAD + row * PANEL + PANEL / 2;
    const geometry = geometries[index];

    children.push(tag("line", {
      x1: cx - PANEL / 2 + 10, y1: cy, x2: cx + PANEL / 2 - 10, y2: cy,
      stroke: "#bbbbbb", "stroke-width": 1,
    }));
    children.push(tag("line", {
      x1: cx, y1: cy - PANEL / 2 + 24, x2: cx, y2: cy + PANEL / 2 - 10,
      stroke: "#bbbbbb", "stroke-width": 1,
    }));
    children.push(tag("circle", {
      cx, cy, r: VACUUM_RADIUS * pixelsPerUnit,
      fill: "none", stroke: "#888888", "stroke-dasharray": "5 4",
      class: "vacuum-reference",
    }));
    const degrees = (-geometry.angle * 180) / Math.PI; // SVG y axis points down
    children.push(tag("ellipse", {
      cx, cy,
      rx: geometry.rMajor * pixelsPerUnit,
      ry: geometry.rMinor * pixelsPerUnit,
      transform: `rotate(${Number(degrees.toPrecision(8))} ${cx} ${cy})`,
      fill: "rgba(31, 119, 180, 0.25)",
      stroke: "#1f77b4",
      "stroke-width": 2,
      class: "state-ellipse",
      "data-label": entry.label,
      "data-axis-ratio": Number((geometry.rMajor / geometry.rMinor).toPrecision(8)),
    }));
    children.push(text(entry.label, {
      x: cx, y: cy - PANEL / 2 + 16, "text-anchor": "middle",
      "font-family": "sans-serif", "font-size": 15,
    }));
  });

  return svgDocument(width, height, children);
}
