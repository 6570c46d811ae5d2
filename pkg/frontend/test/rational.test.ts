import { describe, expect, it } from "vitest";

import {
  add,
  compare,
  isNegative,
  isPositive,
  negate,
  parseFrequencyText,
  parseLengthText,
  parseWireScalar,
  rational,
  toNumber,
  toWireText,
} from "../src/rational.js";

describe("frequency text", () => {
  it("accepts integers and fractions", () => {
    expect(parseFrequencyText("3")).toEqual({ num: 3n, den: 1n });
    expect(parseFrequencyText("15/4")).toEqual({ num: 15n, den: 4n });
    expect(parseFrequencyText("-7/3")).toEqual({ num: -7n, den: 3n });
    expect(parseFrequencyText(" 2 ")).toEqual({ num: 2n, den: 1n });
  });

  it("normalizes to lowest terms", () => {
    expect(parseFrequencyText("10/4")).toEqual({ num: 5n, den: 2n });
    expect(parseFrequencyText("6/3")).toEqual({ num: 2n, den: 1n });
  });

  it("rejects decimals, junk, and zero denominators", () => {
    expect(() => parseFrequencyText("2.5")).toThrow(/not a valid frequency/);
    expect(() => parseFrequencyText("three")).toThrow(/not a valid frequency/);
    expect(() => parseFrequencyText("")).toThrow(/not a valid frequency/);
    expect(() => parseFrequencyText("1/0")).toThrow(/zero denominator/);
  });
});

describe("length text", () => {
  it("accepts decimals exactly", () => {
    expect(parseLengthText("0.5")).toEqual({ num: 1n, den: 2n });
    expect(parseLengthText("12.25")).toEqual({ num: 49n, den: 4n });
    expect(parseLengthText(".75")).toEqual({ num: 3n, den: 4n });
    expect(parseLengthText("-0.1")).toEqual({ num: -1n, den: 10n });
  });

  it("still accepts fractions and integers", () => {
    expect(parseLengthText("13")).toEqual({ num: 13n, den: 1n });
    expect(parseLengthText("7/2")).toEqual({ num: 7n, den: 2n });
  });

  it("rejects junk", () => {
    expect(() => parseLengthText("1.2.3")).toThrow(/not a valid length/);
    expect(() => parseLengthText("12a")).toThrow(/not a valid length/);
  });
});

describe("wire scalars", () => {
  it("accepts integral numbers", () => {
    expect(parseWireScalar(12)).toEqual({ num: 12n, den: 1n });
  });

  it("rejects non-integral numbers (exactness would be lost)", () => {
    expect(() => parseWireScalar(2.5)).toThrow(/non-integral/);
  });
});

describe("arithmetic and wire text", () => {
  it("adds exactly", () => {
    expect(add(rational(1n, 2n), rational(1n, 3n))).toEqual({ num: 5n, den: 6n });
    expect(add(rational(12n), rational(1n))).toEqual({ num: 13n, den: 1n });
  });

  it("serializes integers bare and fractions as p/q", () => {
    expect(toWireText(rational(13n))).toBe("13");
    expect(toWireText(rational(5n, 2n))).toBe("5/2");
    expect(toWireText(add(rational(3n), negate(rational(1n, 2n))))).toBe("5/2");
  });

  it("compares and classifies signs", () => {
    expect(compare(rational(1n, 3n), rational(1n, 2n))).toBe(-1);
    expect(compare(rational(2n, 4n), rational(1n, 2n))).toBe(0);
    expect(isPositive(rational(1n, 9n))).toBe(true);
    expect(isNegative(rational(-1n, 9n))).toBe(true);
    expect(toNumber(rational(5n, 2n))).toBe(2.5);
  });
});
