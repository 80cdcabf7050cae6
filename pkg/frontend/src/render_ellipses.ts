/** Render phase-space uncertainty ellipses:
 *    node dist/render_ellipses.js --report fig1.json --out ellipses.svg
 * Accepts fig1 or entangle report payloads.
 */

import { readFileSync, writeFileSync } from "node:fs";

import { fail, parseFlags } from "./cli_common.js";
import { renderEllipses } from "./ellipse_plot.js";

function main(): void {
  let flags: Map<string, string>;
  try {
    flags = parseFlags(process.argv.slice(2), ["--report", "--out"]);
  } catch (error) {
    fail((error as Error).message);
  }
  const reportPath = flags.get("--report");
  const outPath = flags.get("--out");
  if (reportPath === undefined || outPath === undefined) {
    fail("--report and --out are required");
  }

  let svg: string;
  try {
    svg = renderEllipses(readFileSync(reportPath, "utf8"));
  } catch (error) {
    fail((error as Error).message);
  }
  writeFileSync(outPath, svg);
}

main();
