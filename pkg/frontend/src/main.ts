// Page bootstrap: create or join a session, then hand off to GameClient.

import { createSession, GameClient } from "./client.js";

function wsBase(httpBase: string): string {
  return httpBase.replace(/^http/, "ws");
}

function start(): void {
  const form = document.getElementById("join-form") as HTMLFormElement;
  const table = document.getElementById("table") as HTMLElement;
  let client: GameClient | null = null;

  form.addEventListener("submit", async (ev) => {
    ev.preventDefault();
    const server = (document.getElementById("server") as HTMLInputElement).value;
    const existing = (document.getElementById("session") as HTMLInputElement).value.trim();
    const players = Number((document.getElementById("players") as HTMLInputElement).value);
    const seat = Number((document.getElementById("seat") as HTMLInputElement).value);
    try {
      let sessionId = existing;
      if (sessionId === "") {
        const seats = Array.from({ length: players }, (_, i) =>
          i === seat ? "human" : "hat");
        sessionId = await createSession(server, players, seats);
      }
      client?.close();
      client = new GameClient(wsBase(server), sessionId, seat, table);
      client.connect();
    } catch (err) {
      table.textContent = String(err);
    }
  });
}

start();
