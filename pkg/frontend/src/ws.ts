/**
 * WebSocket client for a machine session.
 *
 * Owns one socket at a time, feeds every server message into the
 * SessionView, and reconnects with a fixed backoff after a drop without
 * clearing the accumulated trace (the hello on reconnect re-seeds the
 * polylines from the server's authoritative segments).
 */

import { ControlMessage, parseServerMessage } from "./protocol.js";
import { SessionView } from "./session.js";

export interface SessionClientOptions {
  reconnectDelayMs?: number;
  onUpdate?: () => void;
}

export class SessionClient {
  readonly view: SessionView;
  private readonly url: string;
  private readonly reconnectDelayMs: number;
  private readonly onUpdate: () => void;
  private socket: WebSocket | null = null;
  private closedByUser = false;
  private reconnectTimer: ReturnType<typeof setTimeout> | null = null;

  constructor(url: string, view: SessionView, options: SessionClientOptions = {}) {
    this.url = url;
    this.view = view;
    this.reconnectDelayMs = options.reconnectDelayMs ?? 1000;
    this.onUpdate = options.onUpdate ?? (() => undefined);
  }

  connect(): void {
    this.closedByUser = false;
    this.open();
  }

  private open(): void {
    const socket = new WebSocket(this.url);
    this.socket = socket;
    socket.onmessage = (event: MessageEvent) => {
      this.view.handle(parseServerMessage(String(event.data)));
      this.onUpdate();
    };
    socket.onclose = () => {
      if (this.socket !== socket) {
        return; // superseded by a newer socket
      }
      this.socket = null;
      if (this.closedByUser) {
        this.view.onClosed();
      } else {
        this.view.onConnectionLost();
        this.reconnectTimer = setTimeout(() => this.open(), this.reconnectDelayMs);
      }
      this.onUpdate();
    };
    socket.onerror = () => {
      // close always follows; nothing extra to do
    };
  }

  /** Send a control message, tracking it for ack/error correlation. */
  send(msg: ControlMessage): void {
    if (!this.socket || this.socket.readyState !== WebSocket.OPEN) {
      throw new Error("not connected");
    }
    this.view.noteSent(msg);
    this.socket.send(JSON.stringify(msg));
  }

  close(): void {
    this.closedByUser = true;
    if (this.reconnectTimer !== null) {
      clearTimeout(this.reconnectTimer);
      this.reconnectTimer = null;
    }
    if (this.socket) {
      this.socket.close();
    } else {
      this.view.onClosed();
    }
  }
}
