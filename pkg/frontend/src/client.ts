// WebSocket wiring: one connection, one view, re-rendered on every
// message. Disconnects reconnect and receive a fresh censored snapshot
// from the server (the view is rebuilt from it, not patched).

import type { Move, MoveSubmission, ServerMessage } from "./protocol.js";
import { mount } from "./render.js";
import { ClientView, initialView, reconcile } from "./view.js";

export class GameClient {
  private view: ClientView = initialView();
  private socket: WebSocket | null = null;
  private closed = false;

  constructor(
    private readonly baseUrl: string,
    private readonly sessionId: string,
    private readonly seat: number,
    private readonly root: HTMLElement,
  ) {}

  connect(): void {
    this.closed = false;
    this.view = initialView();
    this.socket = new WebSocket(`${this.baseUrl}/ws/${this.sessionId}/${this.seat}`);
    this.socket.onmessage = (ev) => {
      const msg = JSON.parse(ev.data as string) as ServerMessage;
      this.view = reconcile(this.view, msg);
      this.render();
    };
    this.socket.onclose = () => {
      if (!this.closed && !this.view.gameOver) {
        setTimeout(() => this.connect(), 1000);
      }
    };
    this.render();
  }

  close(): void {
    this.closed = true;
    this.socket?.close();
  }

  private submit = (move: Move): void => {
    const msg: MoveSubmission = { type: "move", move };
    this.socket?.send(JSON.stringify(msg));
  };

  private render(): void {
    mount(this.root, this.view, this.submit);
  }
}

export async function createSession(
  baseUrl: string,
  players: number,
  seats: string[],
): Promise<string> {
  const resp = await fetch(`${baseUrl}/sessions`, {
    method: "POST",
    headers: { "Content-Type": "application/json" },
    body: JSON.stringify({ players, seats }),
  });
  if (!resp.ok) {
    throw new Error(`session creation failed: ${await resp.text()}`);
  }
  const body = (await resp.json()) as { session: string };
  return body.session;
}
