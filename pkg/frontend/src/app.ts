/**
 * Operator console wiring: knobs, transport buttons, slip nudges, dual
 * canvases (turntable frame and lab frame), and SVG export.
 *
 * All state lives in the SessionView; this module only reads it on
 * animation frames and turns widget events into control messages.
 */

import {
  ControlMessage,
  ParamName,
  PolarizationWire,
  knobChange,
  stcfNudge,
  stcpNudge,
} from "./protocol.js";
import { negate } from "./rational.js";
import { UNIT } from "./protocol.js";
import { Polyline, SessionView } from "./session.js";
import { DEFAULT_PALETTE, polylinesToSvg } from "./svg.js";
import { SessionClient } from "./ws.js";

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) {
    throw new Error(`missing element #${id}`);
  }
  return node as T;
}

function sessionName(): string {
  return new URLSearchParams(window.location.search).get("session") ?? "default";
}

function wsUrl(): string {
  const scheme = window.location.protocol === "https:" ? "wss" : "ws";
  return `${scheme}://${window.location.host}/machine?session=${encodeURIComponent(sessionName())}`;
}

const view = new SessionView();
let dirty = true;
const client = new SessionClient(wsUrl(), view, { onUpdate: () => (dirty = true) });

// --- widgets --------------------------------------------------------------------

const knobNames: ParamName[] = ["a", "b", "omega_table", "omega_pen"];
const knobInputs = new Map<ParamName, HTMLInputElement>();
let knobsSeeded = false;

function toast(text: string): void {
  const box = el<HTMLDivElement>("toasts");
  const note = document.createElement("div");
  note.className = "toast";
  note.textContent = text;
  box.appendChild(note);
  setTimeout(() => note.remove(), 4000);
}

function trySend(build: () => ControlMessage): void {
  try {
    client.send(build());
  } catch (err) {
    toast(err instanceof Error ? err.message : String(err));
  }
}

function setupControls(): void {
  for (const name of knobNames) {
    const input = el<HTMLInputElement>(`knob-${name}`);
    knobInputs.set(name, input);
    el<HTMLButtonElement>(`apply-${name}`).addEventListener("click", () => {
      const rig = view.state?.rig;
      if (!rig) {
        toast("not connected yet");
        return;
      }
      trySend(() => knobChange(rig, name, input.value));
    });
  }
  el<HTMLSelectElement>("knob-polarization").addEventListener("change", (event) => {
    const value = (event.target as HTMLSelectElement).value as PolarizationWire;
    trySend(() => ({ type: "set_polarization", value }));
  });
  el<HTMLButtonElement>("btn-start").addEventListener("click", () => trySend(() => ({ type: "start" })));
  el<HTMLButtonElement>("btn-pause").addEventListener("click", () => trySend(() => ({ type: "pause" })));
  el<HTMLButtonElement>("btn-reset").addEventListener("click", () => trySend(() => ({ type: "reset" })));
  el<HTMLButtonElement>("btn-pen-down").addEventListener("click", () => trySend(() => ({ type: "pen_down" })));
  el<HTMLButtonElement>("btn-pen-up").addEventListener("click", () => trySend(() => ({ type: "pen_up" })));

  const withRig = (fn: (rig: NonNullable<typeof view.state>["rig"]) => ControlMessage) => () => {
    const rig = view.state?.rig;
    if (!rig) {
      toast("not connected yet");
      return;
    }
    trySend(() => fn(rig));
  };
  el<HTMLButtonElement>("nudge-a-plus").addEventListener("click", withRig((rig) => stcpNudge(rig, UNIT)));
  el<HTMLButtonElement>("nudge-a-minus").addEventListener("click", withRig((rig) => stcpNudge(rig, negate(UNIT))));
  el<HTMLButtonElement>("nudge-om-plus").addEventListener("click", withRig((rig) => stcfNudge(rig, UNIT)));
  el<HTMLButtonElement>("nudge-om-minus").addEventListener("click", withRig((rig) => stcfNudge(rig, negate(UNIT))));

  el<HTMLButtonElement>("btn-export").addEventListener("click", () => {
    const svg = polylinesToSvg(view.tablePolylines.map((p) => p.points));
    const blob = new Blob([svg], { type: "image/svg+xml" });
    const url = URL.createObjectURL(blob);
    const anchor = document.createElement("a");
    anchor.href = url;
    anchor.download = `${sessionName()}-trace.svg`;
    anchor.click();
    URL.revokeObjectURL(url);
  });
  const serverLink = el<HTMLAnchorElement>("link-server-svg");
  serverLink.href = `/export.svg?session=${encodeURIComponent(sessionName())}`;
}

function seedKnobs(): void {
  const rig = view.state?.rig;
  if (!rig || knobsSeeded) {
    return;
  }
  for (const name of knobNames) {
    knobInputs.get(name)!.value = String(rig[name]);
  }
  el<HTMLSelectElement>("knob-polarization").value = rig.polarization;
  knobsSeeded = true;
}

// --- drawing --------------------------------------------------------------------

interface Transform {
  scale: number;
  cx: number;
  cy: number;
}

function fitTransform(canvas: HTMLCanvasElement, worldRadius: number): Transform {
  const radius = Math.max(worldRadius, 1e-9);
  const scale = (Math.min(canvas.width, canvas.height) / 2) * 0.92 / radius;
  return { scale, cx: canvas.width / 2, cy: canvas.height / 2 };
}

function worldRadiusOf(polylines: Polyline[], fallback: number): number {
  let radius = fallback;
  for (const line of polylines) {
    for (const [x, y] of line.points) {
      const r = Math.hypot(x, y);
      if (r > radius) {
        radius = r;
      }
    }
  }
  return radius;
}

function rigReach(): number {
  const rig = view.state?.rig;
  if (!rig) {
    return 1;
  }
  const num = (v: number | string) => {
    const parts = String(v).split("/");
    const p = Number(parts[0]);
    const q = parts.length > 1 ? Number(parts[1]) : 1;
    return p / q;
  };
  return Math.abs(num(rig.a)) + Math.abs(num(rig.b));
}

function drawPolylines(
  ctx: CanvasRenderingContext2D,
  polylines: Polyline[],
  tf: Transform
): void {
  for (const line of polylines) {
    if (line.points.length < 2) {
      continue;
    }
    // color keyed to the revision, so it changes exactly at rig edits
    ctx.strokeStyle = DEFAULT_PALETTE[line.rev % DEFAULT_PALETTE.length]!;
    ctx.lineWidth = 1.5;
    ctx.beginPath();
    line.points.forEach(([x, y], i) => {
      const px = tf.cx + x * tf.scale;
      const py = tf.cy - y * tf.scale;
      if (i === 0) {
        ctx.moveTo(px, py);
      } else {
        ctx.lineTo(px, py);
      }
    });
    ctx.stroke();
  }
}

function circle(ctx: CanvasRenderingContext2D, tf: Transform, x: number, y: number, r: number): void {
  ctx.beginPath();
  ctx.arc(tf.cx + x * tf.scale, tf.cy - y * tf.scale, r * tf.scale, 0, 2 * Math.PI);
  ctx.stroke();
}

function draw(): void {
  const table = el<HTMLCanvasElement>("canvas-table");
  const lab = el<HTMLCanvasElement>("canvas-lab");
  const tctx = table.getContext("2d")!;
  const lctx = lab.getContext("2d")!;
  const reach = rigReach();

  tctx.clearRect(0, 0, table.width, table.height);
  const ttf = fitTransform(table, worldRadiusOf(view.tablePolylines, reach));
  tctx.strokeStyle = "#d0d0d0";
  tctx.lineWidth = 1;
  tctx.setLineDash([4, 4]);
  circle(tctx, ttf, 0, 0, reach);
  tctx.setLineDash([]);
  drawPolylines(tctx, view.tablePolylines, ttf);

  lctx.clearRect(0, 0, lab.width, lab.height);
  const ltf = fitTransform(lab, worldRadiusOf(view.labPolylines, reach));
  const rig = view.state?.rig;
  lctx.strokeStyle = "#b8b8b8";
  lctx.lineWidth = 1;
  lctx.setLineDash([4, 4]);
  if (rig) {
    const parse = (v: number | string) => {
      const parts = String(v).split("/");
      return Number(parts[0]) / (parts.length > 1 ? Number(parts[1]) : 1);
    };
    const a = parse(rig.a);
    const b = parse(rig.b);
    circle(lctx, ltf, 0, 0, a); // turntable circle, fixed in the lab
    circle(lctx, ltf, a, 0, b); // pen circle, fixed center at (a, 0)
  }
  lctx.setLineDash([]);
  lctx.save();
  lctx.globalAlpha = 0.45;
  drawPolylines(lctx, view.labPolylines, ltf);
  lctx.restore();
  if (view.lastSample) {
    const [x, y] = view.lastSample.lab;
    lctx.fillStyle = "#111";
    lctx.beginPath();
    lctx.arc(ltf.cx + x * ltf.scale, ltf.cy - y * ltf.scale, 4, 0, 2 * Math.PI);
    lctx.fill();
  }
}

function refreshStatus(): void {
  const badge = el<HTMLSpanElement>("connection-badge");
  badge.textContent = view.connection;
  badge.dataset.state = view.connection;
  const state = view.state;
  el<HTMLSpanElement>("status-line").textContent = state
    ? `t=${state.t_sim.toFixed(3)}s  rev=${state.revision}  ` +
      `${state.running ? "running" : "paused"}  pen ${state.pen_down ? "down" : "up"}`
    : "waiting for session state";
  const pol = el<HTMLSelectElement>("knob-polarization");
  const running = state?.running ?? false;
  pol.disabled = running;
  pol.title = running ? "spin sense can only be flipped while paused" : "";
}

let lastShownError: unknown = null;

function frame(): void {
  if (dirty) {
    dirty = false;
    seedKnobs();
    refreshStatus();
    draw();
    if (view.lastError && view.lastError !== lastShownError) {
      lastShownError = view.lastError;
      const knob =
        view.lastError.attempted?.type === "set_param"
          ? ` (${view.lastError.attempted.name})`
          : "";
      toast(`${view.lastError.code}${knob}: ${view.lastError.detail}`);
    }
  }
  window.requestAnimationFrame(frame);
}

setupControls();
client.connect();
window.requestAnimationFrame(frame);
