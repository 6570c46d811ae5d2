/**
 * Exact rational arithmetic for knob values.
 *
 * The control service speaks exact scalars: integers, "p/q" fraction
 * strings, and (for lengths only) decimal strings.  Knob math must not
 * round, so values are carried as BigInt ratios end to end.
 */

export interface Rational {
  readonly num: bigint;
  readonly den: bigint; // always > 0
}

function gcd(a: bigint, b: bigint): bigint {
  let x = a < 0n ? -a : a;
  let y = b < 0n ? -b : b;
  while (y !== 0n) {
    const r = x % y;
    x = y;
    y = r;
  }
  return x;
}

export function rational(num: bigint, den: bigint = 1n): Rational {
  if (den === 0n) {
    throw new Error("zero denominator");
  }
  if (den < 0n) {
    num = -num;
    den = -den;
  }
  const g = gcd(num, den);
  return g === 0n ? { num: 0n, den: 1n } : { num: num / g, den: den / g };
}

const FRACTION_RE = /^[+-]?\d+(?:\/\d+)?$/;
const DECIMAL_RE = /^[+-]?(?:\d+\.\d*|\.\d+|\d+)$/;

/** Integers and "p/q" strings only — the frequency wire format. */
export function parseFrequencyText(text: string): Rational {
  const trimmed = text.trim();
  if (!FRACTION_RE.test(trimmed)) {
    throw new Error(`not a valid frequency: ${JSON.stringify(text)}`);
  }
  const slash = trimmed.indexOf("/");
  if (slash < 0) {
    return rational(BigInt(trimmed));
  }
  return rational(BigInt(trimmed.slice(0, slash)), BigInt(trimmed.slice(slash + 1)));
}

/** Lengths also accept decimal text ("0.5" means exactly 1/2). */
export function parseLengthText(text: string): Rational {
  const trimmed = text.trim();
  if (FRACTION_RE.test(trimmed)) {
    return parseFrequencyText(trimmed);
  }
  if (!DECIMAL_RE.test(trimmed)) {
    throw new Error(`not a valid length: ${JSON.stringify(text)}`);
  }
  const neg = trimmed.startsWith("-");
  const unsigned = trimmed.replace(/^[+-]/, "");
  const dot = unsigned.indexOf(".");
  const digits = unsigned.replace(".", "") || "0";
  const scale = dot < 0 ? 0 : unsigned.length - dot - 1;
  const num = BigInt(digits) * (neg ? -1n : 1n);
  return rational(num, 10n ** BigInt(scale));
}

/** Accept what the wire accepts for a scalar: number (integral) or text. */
export function parseWireScalar(value: number | string): Rational {
  if (typeof value === "number") {
    if (!Number.isInteger(value)) {
      throw new Error(`non-integral numeric scalar: ${value}`);
    }
    return rational(BigInt(value));
  }
  return parseLengthText(value);
}

export function add(x: Rational, y: Rational): Rational {
  return rational(x.num * y.den + y.num * x.den, x.den * y.den);
}

export function negate(x: Rational): Rational {
  return { num: -x.num, den: x.den };
}

export function compare(x: Rational, y: Rational): number {
  const lhs = x.num * y.den;
  const rhs = y.num * x.den;
  return lhs < rhs ? -1 : lhs > rhs ? 1 : 0;
}

export const ZERO: Rational = { num: 0n, den: 1n };

export function isPositive(x: Rational): boolean {
  return x.num > 0n;
}

export function isNegative(x: Rational): boolean {
  return x.num < 0n;
}

/** Wire text: bare integer when integral, "p/q" otherwise. */
export function toWireText(x: Rational): string {
  return x.den === 1n ? x.num.toString() : `${x.num}/${x.den}`;
}

export function toNumber(x: Rational): number {
  return Number(x.num) / Number(x.den);
}
