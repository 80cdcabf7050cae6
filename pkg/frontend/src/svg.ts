/** Minimal deterministic SVG assembly: fixed attribute order, fixed number
 * formatting, no dates or randomness, so re-rendering identical inputs gives
 * byte-identical output. */

export type Attributes = Record<string, string | number>;

export function formatNumber(value: number): string {
  if (!Number.isFinite(value)) {
    throw new Error(`cannot format non-finite coordinate ${value}`);
  }
  const rounded = Number(value.toPrecision(8));
  return Object.is(rounded, -0) ? "0" : String(rounded);
}

export function tag(name: string, attributes: Attributes, children: string[] = []): string {
  const parts = Object.entries(attributes).map(([key, raw]) => {
    const value = typeof raw === "number" ? formatNumber(raw) : raw;
    return `${key}="${value}"`;
  });
  const open = parts.length > 0 ? `<${name} ${parts.join(" ")}` : `<${name}`;
  if (children.length === 0) {
    return `${open}/>`;
  }
  return `${open}>${children.join("")}</${name}>`;
}

export function text(content: string, attributes: Attributes): string {
  return tag("text", attributes, [escapeText(content)]);
}

export function escapeText(content: string): string {
  return content.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

export function document(width: number, height: number, children: string[]): string {
  const body = children.join("\n");
  return (
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
    `viewBox="0 0 ${width} ${height}">\n${body}\n</svg>\n`
  );
}

export function polylinePath(points: Array<[number, number]>): string {
  return points
    .map(([x, y], i) => `${i === 0 ? "M" : "L"}${formatNumber(x)} ${formatNumber(y)}`)
    .join("");
}
