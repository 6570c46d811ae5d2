/**
 * Wire protocol spoken with the control service.
 *
 * The client talks to the service only: JSON control messages out over the
 * /machine WebSocket, acks/errors/samples back, plus a few REST endpoints.
 * No curve math happens here beyond validating knob input before sending.
 */

import {
  Rational,
  add,
  compare,
  isNegative,
  isPositive,
  parseFrequencyText,
  parseWireScalar,
  rational,
  toWireText,
  ZERO,
} from "./rational.js";

export type PolarizationWire = "co" | "anti";

export interface RigWire {
  a: number | string;
  b: number | string;
  omega_table: number | string;
  omega_pen: number | string;
  polarization: PolarizationWire;
  phase_table: number;
  phase_pen: number;
}

export interface MachineStateWire {
  rig: RigWire;
  theta: number;
  phi: number;
  t_sim: number;
  running: boolean;
  pen_down: boolean;
  tick_rate: number;
  revision: number;
}

export type ParamName = "a" | "b" | "omega_table" | "omega_pen";

export type ControlMessage =
  | { type: "set_param"; name: ParamName; value: string }
  | { type: "set_polarization"; value: PolarizationWire }
  | { type: "start" }
  | { type: "pause" }
  | { type: "reset" }
  | { type: "pen_up" }
  | { type: "pen_down" }
  | { type: "snapshot" };

export interface SampleMessage {
  type: "sample";
  t: number;
  table: [number, number];
  lab: [number, number];
  pen_down: boolean;
  rev: number;
}

export interface SegmentWire {
  rev: number;
  points: Array<[number, number]>;
}

export interface AckMessage {
  type: "ack";
  message: string;
  rev?: number;
  state?: MachineStateWire;
  segments?: SegmentWire[];
}

export interface ErrorMessage {
  type: "error";
  code: string;
  detail: string;
}

export type ServerMessage = SampleMessage | AckMessage | ErrorMessage;

export function parseServerMessage(raw: string): ServerMessage {
  const data = JSON.parse(raw) as { type?: unknown };
  if (data.type === "sample" || data.type === "ack" || data.type === "error") {
    return data as ServerMessage;
  }
  throw new Error(`unrecognized server message: ${raw.slice(0, 120)}`);
}

/**
 * Client-side mirror of the rig invariants, run before a knob value is
 * sent so obvious mistakes never leave the console: radii are >= 0 and
 * not both zero, spin rates are positive exact rationals.
 */
export function validateKnobChange(rig: RigWire, name: ParamName, text: string): string {
  let value: Rational;
  if (name === "omega_table" || name === "omega_pen") {
    value = parseFrequencyText(text); // throws on decimals and junk
    if (!isPositive(value)) {
      throw new Error(`${name} must be positive, got ${text}`);
    }
  } else {
    value = parseWireScalar(text.trim());
    if (isNegative(value)) {
      throw new Error(`${name} must be >= 0, got ${text}`);
    }
    const other = parseWireScalar(name === "a" ? rig.b : rig.a);
    if (compare(value, ZERO) === 0 && compare(other, ZERO) === 0) {
      throw new Error("a and b cannot both be zero");
    }
  }
  return toWireText(value);
}

export function knobChange(rig: RigWire, name: ParamName, text: string): ControlMessage {
  return { type: "set_param", name, value: validateKnobChange(rig, name, text) };
}

/**
 * One-click center nudge: a <- a + delta, sent as an exact scalar.
 * Positive delta grows the turntable radius, negative shrinks it.
 */
export function stcpNudge(rig: RigWire, delta: Rational): ControlMessage {
  const next = add(parseWireScalar(rig.a), delta);
  if (isNegative(next)) {
    throw new Error("nudge would make the turntable radius negative");
  }
  return { type: "set_param", name: "a", value: toWireText(next) };
}

/**
 * One-click retune nudge: omega_table <- omega_table + delta; the rate
 * must stay positive.
 */
export function stcfNudge(rig: RigWire, delta: Rational): ControlMessage {
  const next = add(parseWireScalar(String(rig.omega_table)), delta);
  if (!isPositive(next)) {
    throw new Error("nudge would stop or reverse the turntable");
  }
  return { type: "set_param", name: "omega_table", value: toWireText(next) };
}

export const UNIT: Rational = rational(1n);
