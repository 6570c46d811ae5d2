import { describe, expect, it } from "vitest";

import {
  extractPathData,
  pathCoordinates,
  polylinePathData,
  polylinesToSvg,
} from "../src/svg.js";

// Captured verbatim from the control service's renderer for the same
// inputs; the client export must be interchangeable with it.
const SERVER_DOC =
  '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="-10.000000 -30.000000 26.000000 43.000000">\n' +
  '<g fill="none" stroke-width="1.500000" stroke-linecap="round" stroke-linejoin="round">\n' +
  '<path stroke="#1f77b4" d="M 0.000000,-20.000000 L 1.250000,-19.500000"/>\n' +
  '<path stroke="#ff7f0e" d="M 2.000000,3.000000 L 4.000000,-5.500000 L 6.000000,-0.000000"/>\n' +
  "</g>\n" +
  "</svg>\n";

const SERVER_EMPTY =
  '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="-10.000000 -10.000000 20.000000 20.000000">\n' +
  '<g fill="none" stroke-width="1.500000" stroke-linecap="round" stroke-linejoin="round">\n' +
  "</g>\n" +
  "</svg>\n";

describe("path data", () => {
  it("formats M/L pairs at six decimals with the y-axis flipped", () => {
    expect(polylinePathData([[1, 2], [3, -4]], true)).toBe(
      "M 1.000000,-2.000000 L 3.000000,4.000000"
    );
  });

  it("can keep the y-axis unflipped", () => {
    expect(polylinePathData([[1, 2]], false)).toBe("M 1.000000,2.000000");
  });
});

describe("document structure", () => {
  it("is byte-identical to the service renderer for the same polylines", () => {
    const doc = polylinesToSvg([
      [[0, 20], [1.25, 19.5]],
      [[2, -3], [4, 5.5], [6, 0]],
    ]);
    expect(doc).toBe(SERVER_DOC);
  });

  it("matches the service for an empty document too", () => {
    expect(polylinesToSvg([])).toBe(SERVER_EMPTY);
  });

  it("cycles the palette per polyline", () => {
    const doc = polylinesToSvg([[[0, 0]], [[1, 1]], [[2, 2]]]);
    expect(doc).toContain('stroke="#1f77b4"');
    expect(doc).toContain('stroke="#ff7f0e"');
    expect(doc).toContain('stroke="#2ca02c"');
  });
});

describe("svg parsing helpers", () => {
  it("round-trips path data through extract and coordinate parsing", () => {
    const paths = extractPathData(SERVER_DOC);
    expect(paths).toHaveLength(2);
    expect(pathCoordinates(paths[0]!)).toEqual([
      [0, -20],
      [1.25, -19.5],
    ]);
    expect(pathCoordinates(paths[1]!)).toEqual([
      [2, 3],
      [4, -5.5],
      [6, -0],
    ]);
  });
});
