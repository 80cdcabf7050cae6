/** Logarithmic axis mapping and decade tick generation. */

export interface LogScale {
  toPixel(value: number): number;
  readonly min: number;
  readonly max: number;
}

export function makeLogScale(
  min: number,
  max: number,
  pixelStart: number,
  pixelEnd: number,
): LogScale {
  if (!(min > 0) || !(max > min)) {
    throw new Error(`log scale needs 0 < min < max, got [${min}, ${max}]`);
  }
  const logMin = Math.log10(min);
  const span = Math.log10(max) - logMin;
  return {
    min,
    max,
    toPixel(value: number): number {
      return pixelStart + ((Math.log10(value) - logMin) / span) * (pixelEnd - pixelStart);
    },
  };
}

/** Powers of ten inside [min, max]. */
export function decadeTicks(min: number, max: number): number[] {
  const ticks: number[] = [];
  for (let e = Math.ceil(Math.log10(min) - 1e-9); e <= Math.floor(Math.log10(max) + 1e-9); e++) {
    ticks.push(10 ** e);
  }
  return ticks;
}

/** Superscript exponent label for a power of ten, e.g. 1e-19 -> "10⁻¹⁹". */
export function decadeLabel(value: number): string {
  const exponent = Math.round(Math.log10(value));
  const superscripts: Record<string, string> = {
    "-": "⁻", "0": "⁰", "1": "¹", "2": "²", "3": "³", "4": "⁴",
    "5": "⁵", "6": "⁶", "7": "⁷", "8": "⁸", "9": "⁹",
  };
  const digits = String(exponent)
    .split("")
    .map((ch) => superscripts[ch])
    .join("");
  return `10${digits}`;
}

/** Piecewise log-log interpolation of a sampled positive curve. */
export function interpolateLogLog(
  frequencies: number[],
  values: number[],
  frequency: number,
): number {
  if (frequency <= frequencies[0]) return values[0];
  const last = frequencies.length - 1;
  if (frequency >= frequencies[last]) return values[last];
  let lo = 0;
  while (frequencies[lo + 1] < frequency) lo++;
  const t =
    (Math.log10(frequency) - Math.log10(frequencies[lo])) /
    (Math.log10(frequencies[lo + 1]) - Math.log10(frequencies[lo]));
  return 10 ** (Math.log10(values[lo]) * (1 - t) + Math.log10(values[lo + 1]) * t);
}
