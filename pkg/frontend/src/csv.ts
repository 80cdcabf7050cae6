/** Parsing of the noise-budget CSV emitted by `epr-optomech budget`. */

const COLUMN_SUFFIX = "_psd_m2_per_hz";

export interface BudgetTable {
  /** grid in Hz, strictly increasing */
  frequencies: number[];
  /** one-sided PSD columns in m^2/Hz, keyed by curve label */
  columns: Map<string, number[]>;
}

export class BudgetFormatError extends Error {}

export function parseBudgetCsv(text: string): BudgetTable {
  const lines = text
    .split(/\r?\n/)
    .map((line) => line.trim())
    .filter((line) => line.length > 0);
  if (lines.length === 0) {
    throw new BudgetFormatError("budget CSV is empty");
  }

  const header = lines[0].split(",");
  if (header[0] !== "frequency_hz") {
    throw new BudgetFormatError(`first column must be frequency_hz, got '${header[0]}'`);
  }
  const labels = header.slice(1).map((name) => {
    if (!name.endsWith(COLUMN_SUFFIX)) {
      throw new BudgetFormatError(`unexpected column name '${name}'`);
    }
    return name.slice(0, -COLUMN_SUFFIX.length);
  });

  if (lines.length === 1) {
    throw new BudgetFormatError("budget CSV has a header but no data rows");
  }

  const frequencies: number[] = [];
  const columns = new Map<string, number[]>(labels.map((label) => [label, []]));
  for (const [index, line] of lines.slice(1).entries()) {
    const cells = line.split(",");
    if (cells.length !== header.length) {
      throw new BudgetFormatError(
        `row ${index + 1} has ${cells.length} cells, expected ${header.length}`,
      );
    }
    const values = cells.map((cell) => {
      const value = Number(cell);
      if (!Number.isFinite(value)) {
        throw new BudgetFormatError(`row ${index + 1} contains a non-numeric cell '${cell}'`);
      }
      return value;
    });
    frequencies.push(values[0]);
    labels.forEach((label, k) => columns.get(label)!.push(values[k + 1]));
  }

  for (let i = 1; i < frequencies.length; i++) {
    if (!(frequencies[i] > frequencies[i - 1])) {
      throw new BudgetFormatError("frequency grid must be strictly increasing");
    }
  }
  return { frequencies, columns };
}

/** Column lookup that names the missing label in its error. */
export function requireColumn(table: BudgetTable, label: string): number[] {
  const column = table.columns.get(label);
  if (column === undefined) {
    const known = [...table.columns.keys()].join(", ");
    throw new BudgetFormatError(`curve '${label}' not present in CSV (have: ${known})`);
  }
  return column;
}
