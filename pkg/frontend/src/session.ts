/**
 * Client-side session state: a mirror of the machine snapshot, a bounded
 * ring of samples, and per-frame polylines split at rig-revision
 * boundaries (one color per revision when rendered).
 *
 * The reducer mirrors the server's segmentation rules exactly: only
 * pen-down samples are recorded, and a new polyline starts whenever the
 * revision changes or drawing resumes after a gap.  That is what makes a
 * client-side SVG export line up with the server's /export.svg.
 */

import {
  AckMessage,
  ControlMessage,
  ErrorMessage,
  MachineStateWire,
  SampleMessage,
  ServerMessage,
} from "./protocol.js";

export type ConnectionState = "connecting" | "open" | "reconnecting" | "closed";

export interface Polyline {
  rev: number;
  points: Array<[number, number]>;
}

export interface KnobError {
  /** The rejected control message, for tying the toast to its knob. */
  attempted: ControlMessage | null;
  code: string;
  detail: string;
}

const DEFAULT_SAMPLE_CAP = 200_000;

function appendPoint(
  polylines: Polyline[],
  rev: number,
  point: [number, number],
  forceNew: boolean
): void {
  const tail = polylines[polylines.length - 1];
  if (forceNew || !tail || tail.rev !== rev) {
    polylines.push({ rev, points: [point] });
  } else {
    tail.points.push(point);
  }
}

function evict(polylines: Polyline[], stored: number, cap: number): number {
  while (stored > cap) {
    const head = polylines[0];
    if (!head) {
      return 0;
    }
    head.points.shift();
    stored -= 1;
    if (head.points.length === 0) {
      polylines.shift();
    }
  }
  return stored;
}

export class SessionView {
  connection: ConnectionState = "connecting";
  state: MachineStateWire | null = null;
  tablePolylines: Polyline[] = [];
  labPolylines: Polyline[] = [];
  lastSample: SampleMessage | null = null;
  lastError: KnobError | null = null;
  /** Control messages sent but not yet acked, oldest first. */
  private pending: ControlMessage[] = [];
  private segmentOpen = false;
  private storedTable = 0;
  private storedLab = 0;
  private readonly sampleCap: number;

  constructor(sampleCap: number = DEFAULT_SAMPLE_CAP) {
    if (!(sampleCap > 0)) {
      throw new Error(`sample cap must be positive, got ${sampleCap}`);
    }
    this.sampleCap = sampleCap;
  }

  /** Record a message we just sent, so its ack/error can be correlated. */
  noteSent(msg: ControlMessage): void {
    this.pending.push(msg);
  }

  handle(msg: ServerMessage): void {
    if (msg.type === "sample") {
      this.onSample(msg);
    } else if (msg.type === "ack") {
      this.onAck(msg);
    } else {
      this.onError(msg);
    }
  }

  onConnectionLost(): void {
    // reconnect state only; the trace buffer survives the outage
    if (this.connection !== "closed") {
      this.connection = "reconnecting";
    }
    this.pending = [];
  }

  onClosed(): void {
    this.connection = "closed";
    this.pending = [];
  }

  private onSample(msg: SampleMessage): void {
    this.lastSample = msg;
    if (this.state) {
      this.state.t_sim = msg.t;
      this.state.pen_down = msg.pen_down;
      this.state.revision = msg.rev;
    }
    if (!msg.pen_down) {
      this.segmentOpen = false;
      return;
    }
    const forceNew = !this.segmentOpen;
    appendPoint(this.tablePolylines, msg.rev, [msg.table[0], msg.table[1]], forceNew);
    appendPoint(this.labPolylines, msg.rev, [msg.lab[0], msg.lab[1]], forceNew);
    this.segmentOpen = true;
    this.storedTable = evict(this.tablePolylines, this.storedTable + 1, this.sampleCap);
    this.storedLab = evict(this.labPolylines, this.storedLab + 1, this.sampleCap);
  }

  private onAck(msg: AckMessage): void {
    if (msg.message === "hello") {
      this.connection = "open";
      this.state = msg.state ?? null;
      this.adoptSegments(msg.segments ?? []);
      return;
    }
    const sent = this.pending.shift() ?? null;
    if (msg.state !== undefined) {
      this.state = msg.state; // snapshot ack carries the full state
    }
    if (typeof msg.rev === "number" && this.state) {
      this.state.revision = msg.rev;
    }
    if (!this.state) {
      return;
    }
    switch (msg.message) {
      case "start":
        this.state.running = true;
        break;
      case "pause":
        this.state.running = false;
        break;
      case "pen_down":
        this.state.pen_down = true;
        break;
      case "pen_up":
        this.state.pen_down = false;
        this.segmentOpen = false;
        break;
      case "reset":
        this.state.running = false;
        this.state.pen_down = false;
        this.state.t_sim = 0;
        this.clearTrace();
        break;
      case "set_param":
        // commit the optimistic knob value the ack confirms
        if (sent && sent.type === "set_param") {
          this.state.rig = { ...this.state.rig, [sent.name]: sent.value };
        }
        break;
      case "set_polarization":
        if (sent && sent.type === "set_polarization") {
          this.state.rig = { ...this.state.rig, polarization: sent.value };
        }
        break;
      default:
        break;
    }
  }

  private onError(msg: ErrorMessage): void {
    // the rejected message is dropped, state stays as the server left it
    const attempted = this.pending.shift() ?? null;
    this.lastError = { attempted, code: msg.code, detail: msg.detail };
  }

  /** Server segments are authoritative on (re)connect; no duplication. */
  private adoptSegments(segments: Array<{ rev: number; points: Array<[number, number]> }>): void {
    this.tablePolylines = segments
      .filter((seg) => seg.points.length > 0)
      .map((seg) => ({
        rev: seg.rev,
        points: seg.points.map(([x, y]) => [x, y] as [number, number]),
      }));
    this.labPolylines = [];
    this.storedTable = this.tablePolylines.reduce((n, seg) => n + seg.points.length, 0);
    this.storedLab = 0;
    // keep appending into the server's open segment if drawing continues
    const tail = this.tablePolylines[this.tablePolylines.length - 1];
    this.segmentOpen =
      this.state !== null &&
      this.state.pen_down &&
      tail !== undefined &&
      tail.rev === this.state.revision;
    this.storedTable = evict(this.tablePolylines, this.storedTable, this.sampleCap);
  }

  private clearTrace(): void {
    this.tablePolylines = [];
    this.labPolylines = [];
    this.storedTable = 0;
    this.storedLab = 0;
    this.segmentOpen = false;
    this.lastSample = null;
  }
}
