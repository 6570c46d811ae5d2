import { describe, expect, it } from "vitest";

import { MachineStateWire, SampleMessage } from "../src/protocol.js";
import { SessionView } from "../src/session.js";

function stateWire(overrides: Partial<MachineStateWire> = {}): MachineStateWire {
  return {
    rig: {
      a: 12,
      b: 2,
      omega_table: "3",
      omega_pen: "15",
      polarization: "anti",
      phase_table: 0,
      phase_pen: 0,
    },
    theta: 0,
    phi: 0,
    t_sim: 0,
    running: false,
    pen_down: false,
    tick_rate: 240,
    revision: 0,
    ...overrides,
  };
}

function hello(view: SessionView, overrides: Partial<MachineStateWire> = {}, segments: Array<{ rev: number; points: Array<[number, number]> }> = []): void {
  view.handle({ type: "ack", message: "hello", state: stateWire(overrides), segments });
}

function sample(n: number, penDown: boolean, rev: number): SampleMessage {
  return {
    type: "sample",
    t: n / 240,
    table: [n, n + 0.5],
    lab: [n + 0.25, n + 0.75],
    pen_down: penDown,
    rev,
  };
}

describe("hello handshake", () => {
  it("opens the connection and mirrors the snapshot", () => {
    const view = new SessionView();
    expect(view.connection).toBe("connecting");
    hello(view, { running: true });
    expect(view.connection).toBe("open");
    expect(view.state?.running).toBe(true);
    expect(view.tablePolylines).toEqual([]);
  });

  it("adopts server segments as the authoritative trace", () => {
    const view = new SessionView();
    hello(view, { pen_down: true, revision: 1 }, [
      { rev: 0, points: [[1, 2], [3, 4]] },
      { rev: 1, points: [[5, 6]] },
    ]);
    expect(view.tablePolylines).toHaveLength(2);
    // drawing continues into the open segment: same revision, no forced split
    view.handle(sample(7, true, 1));
    expect(view.tablePolylines).toHaveLength(2);
    expect(view.tablePolylines[1]!.points).toEqual([[5, 6], [7, 7.5]]);
    // the lab frame has no server history; it starts fresh without crashing
    expect(view.labPolylines).toHaveLength(1);
    expect(view.labPolylines[0]!.points).toEqual([[7.25, 7.75]]);
  });
});

describe("sample accumulation", () => {
  it("records only pen-down samples", () => {
    const view = new SessionView();
    hello(view);
    view.handle(sample(0, false, 0));
    view.handle(sample(1, false, 0));
    expect(view.tablePolylines).toEqual([]);
    view.handle(sample(2, true, 0));
    expect(view.tablePolylines).toHaveLength(1);
    expect(view.tablePolylines[0]!.points).toEqual([[2, 2.5]]);
  });

  it("starts a new polyline exactly at revision changes", () => {
    const view = new SessionView();
    hello(view);
    view.handle(sample(0, true, 0));
    view.handle(sample(1, true, 0));
    view.handle(sample(2, true, 1));
    view.handle(sample(3, true, 1));
    expect(view.tablePolylines.map((p) => p.rev)).toEqual([0, 1]);
    expect(view.tablePolylines[0]!.points).toHaveLength(2);
    expect(view.tablePolylines[1]!.points).toHaveLength(2);
    expect(view.labPolylines.map((p) => p.rev)).toEqual([0, 1]);
  });

  it("starts a new polyline when drawing resumes after a pen gap", () => {
    const view = new SessionView();
    hello(view);
    view.handle(sample(0, true, 0));
    view.handle(sample(1, false, 0));
    view.handle(sample(2, true, 0));
    expect(view.tablePolylines).toHaveLength(2);
    expect(view.tablePolylines.map((p) => p.rev)).toEqual([0, 0]);
  });

  it("mirrors t, pen state, and revision into the snapshot", () => {
    const view = new SessionView();
    hello(view);
    view.handle(sample(5, true, 3));
    expect(view.state?.t_sim).toBeCloseTo(5 / 240, 12);
    expect(view.state?.pen_down).toBe(true);
    expect(view.state?.revision).toBe(3);
  });
});

describe("ring buffer bound", () => {
  it("evicts oldest points first and drops emptied polylines", () => {
    const view = new SessionView(4);
    hello(view);
    view.handle(sample(0, true, 0));
    view.handle(sample(1, true, 0));
    view.handle(sample(2, true, 1));
    view.handle(sample(3, true, 1));
    view.handle(sample(4, true, 1));
    // capacity 4: the very first point fell off the front
    expect(view.tablePolylines.map((p) => p.points.length)).toEqual([1, 3]);
    expect(view.tablePolylines[0]!.points[0]).toEqual([1, 1.5]);
    view.handle(sample(5, true, 1));
    // the rev-0 polyline is now gone entirely
    expect(view.tablePolylines.map((p) => p.rev)).toEqual([1]);
    expect(view.tablePolylines[0]!.points).toHaveLength(4);
  });
});

describe("ack handling", () => {
  it("tracks running and pen flags", () => {
    const view = new SessionView();
    hello(view);
    view.noteSent({ type: "start" });
    view.handle({ type: "ack", message: "start" });
    expect(view.state?.running).toBe(true);
    view.noteSent({ type: "pause" });
    view.handle({ type: "ack", message: "pause" });
    expect(view.state?.running).toBe(false);
  });

  it("commits an optimistic knob value when its ack arrives", () => {
    const view = new SessionView();
    hello(view);
    view.noteSent({ type: "set_param", name: "a", value: "13" });
    view.handle({ type: "ack", message: "set_param", rev: 1 });
    expect(view.state?.rig.a).toBe("13");
    expect(view.state?.revision).toBe(1);
  });

  it("rolls back (never applies) a rejected knob value", () => {
    const view = new SessionView();
    hello(view);
    view.noteSent({ type: "set_param", name: "a", value: "-1" });
    view.handle({ type: "error", code: "InvalidValue", detail: "a must be >= 0" });
    expect(view.state?.rig.a).toBe(12);
    expect(view.lastError?.code).toBe("InvalidValue");
    expect(view.lastError?.attempted).toEqual({ type: "set_param", name: "a", value: "-1" });
  });

  it("correlates acks with sends in order", () => {
    const view = new SessionView();
    hello(view);
    view.noteSent({ type: "set_param", name: "a", value: "13" });
    view.noteSent({ type: "set_param", name: "b", value: "3" });
    view.handle({ type: "ack", message: "set_param", rev: 1 });
    view.handle({ type: "ack", message: "set_param", rev: 2 });
    expect(view.state?.rig.a).toBe("13");
    expect(view.state?.rig.b).toBe("3");
    expect(view.state?.revision).toBe(2);
  });

  it("reset clears the trace and stops the pen", () => {
    const view = new SessionView();
    hello(view, { running: true, pen_down: true });
    view.handle(sample(0, true, 0));
    view.noteSent({ type: "reset" });
    view.handle({ type: "ack", message: "reset" });
    expect(view.tablePolylines).toEqual([]);
    expect(view.labPolylines).toEqual([]);
    expect(view.state?.pen_down).toBe(false);
    expect(view.state?.running).toBe(false);
    expect(view.state?.t_sim).toBe(0);
  });

  it("snapshot ack replaces the whole state mirror", () => {
    const view = new SessionView();
    hello(view);
    view.noteSent({ type: "snapshot" });
    view.handle({
      type: "ack",
      message: "snapshot",
      state: stateWire({ revision: 7, running: true }),
    });
    expect(view.state?.revision).toBe(7);
    expect(view.state?.running).toBe(true);
  });
});

describe("connection lifecycle", () => {
  it("keeps the trace across a connection loss", () => {
    const view = new SessionView();
    hello(view);
    view.handle(sample(0, true, 0));
    view.onConnectionLost();
    expect(view.connection).toBe("reconnecting");
    expect(view.tablePolylines).toHaveLength(1);
    // reconnect hello replaces the trace with the server's version
    hello(view, {}, [{ rev: 0, points: [[0, 0.5], [9, 9]] }]);
    expect(view.connection).toBe("open");
    expect(view.tablePolylines[0]!.points).toEqual([[0, 0.5], [9, 9]]);
  });

  it("an intentional close is terminal", () => {
    const view = new SessionView();
    hello(view);
    view.onClosed();
    expect(view.connection).toBe("closed");
  });
});
