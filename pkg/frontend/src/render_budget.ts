/** Render the noise-budget SVG:
 *    node dist/render_budget.js --csv budget.csv --band band.json --out budget.svg
 * The band report is optional; without it no crossing markers are drawn.
 * Writes nothing on error and exits nonzero.
 */

import { readFileSync, writeFileSync } from "node:fs";

import { renderBudget } from "./budget_plot.js";
import { fail, parseFlags } from "./cli_common.js";

function main(): void {
  let flags: Map<string, string>;
  try {
    flags = parseFlags(process.argv.slice(2), ["--csv", "--band", "--out"]);
  } catch (error) {
    fail((error as Error).message);
  }
  const csvPath = flags.get("--csv");
  const outPath = flags.get("--out");
  if (csvPath === undefined || outPath === undefined) {
    fail("--csv and --out are required");
  }

  let svg: string;
  try {
    const csvText = readFileSync(csvPath, "utf8");
    const bandPath = flags.get("--band");
    const bandJson = bandPath === undefined ? undefined : readFileSync(bandPath, "utf8");
    svg = renderBudget(csvText, bandJson);
  } catch (error) {
    fail((error as Error).message);
  }
  writeFileSync(outPath, svg);
}

main();
