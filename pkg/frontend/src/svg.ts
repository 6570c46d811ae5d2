/**
 * SVG export of the accumulated trace.
 *
 * The document structure matches the control service's /export.svg
 * renderer exactly — same palette order, same 6-decimal coordinates,
 * same margin and y-flip — so a client-side export of the same points
 * is interchangeable with the server's (within display rounding).
 */

export interface RenderStyle {
  strokeWidth: number;
  palette: readonly string[];
  margin: number;
  flipY: boolean;
}

export const DEFAULT_PALETTE: readonly string[] = [
  "#1f77b4",
  "#ff7f0e",
  "#2ca02c",
  "#d62728",
  "#9467bd",
  "#8c564b",
];

export const DEFAULT_STYLE: RenderStyle = {
  strokeWidth: 1.5,
  palette: DEFAULT_PALETTE,
  margin: 10,
  flipY: true,
};

function fmt(value: number): string {
  // keep the sign of negative zero so output matches the service renderer
  // byte for byte (toFixed drops it; nothing else ever differs)
  if (Object.is(value, -0)) {
    return "-0.000000";
  }
  return value.toFixed(6);
}

export function polylinePathData(points: ReadonlyArray<readonly [number, number]>, flipY: boolean): string {
  const sign = flipY ? -1 : 1;
  return points
    .map(([x, y], i) => `${i === 0 ? "M" : "L"} ${fmt(x)},${fmt(sign * y)}`)
    .join(" ");
}

export function polylinesToSvg(
  pointLists: ReadonlyArray<ReadonlyArray<readonly [number, number]>>,
  style: RenderStyle = DEFAULT_STYLE
): string {
  const sign = style.flipY ? -1 : 1;
  let minX = 0;
  let maxX = 0;
  let minY = 0;
  let maxY = 0;
  let any = false;
  for (const points of pointLists) {
    for (const [x, rawY] of points) {
      const y = sign * rawY;
      if (!any) {
        minX = maxX = x;
        minY = maxY = y;
        any = true;
      } else {
        if (x < minX) minX = x;
        if (x > maxX) maxX = x;
        if (y < minY) minY = y;
        if (y > maxY) maxY = y;
      }
    }
  }
  const x0 = minX - style.margin;
  const y0 = minY - style.margin;
  const width = maxX - minX + 2 * style.margin;
  const height = maxY - minY + 2 * style.margin;

  const lines: string[] = [];
  lines.push(
    '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" ' +
      `viewBox="${fmt(x0)} ${fmt(y0)} ${fmt(width)} ${fmt(height)}">`
  );
  lines.push(
    `<g fill="none" stroke-width="${fmt(style.strokeWidth)}" ` +
      'stroke-linecap="round" stroke-linejoin="round">'
  );
  pointLists.forEach((points, i) => {
    const color = style.palette[i % style.palette.length];
    lines.push(`<path stroke="${color}" d="${polylinePathData(points, style.flipY)}"/>`);
  });
  lines.push("</g>");
  lines.push("</svg>");
  return lines.join("\n") + "\n";
}

/** Parse the `d` attributes back out of an SVG document, for comparisons. */
export function extractPathData(svg: string): string[] {
  const out: string[] = [];
  const re = /<path [^>]*d="([^"]*)"/g;
  let match: RegExpExecArray | null;
  while ((match = re.exec(svg)) !== null) {
    out.push(match[1] ?? "");
  }
  return out;
}

/** Flatten path data "M x,y L x,y ..." into coordinate pairs. */
export function pathCoordinates(d: string): Array<[number, number]> {
  const coords: Array<[number, number]> = [];
  for (const token of d.split(/[ML]/).map((s) => s.trim()).filter((s) => s.length > 0)) {
    const [xs, ys] = token.split(",");
    if (xs === undefined || ys === undefined) {
      throw new Error(`malformed path token: ${JSON.stringify(token)}`);
    }
    coords.push([Number(xs), Number(ys)]);
  }
  return coords;
}
