// HTML rendering as a pure function of the view, plus a thin mount layer
// that wires move buttons. Own cards are always face-down: only hint
// badges and negative markers are shown, never identities.

import type { Move } from "./protocol.js";
import { ClientView, describeMove, ownHandBadges } from "./view.js";

const COLOR_ORDER = "RYGWB";
const COLOR_NAMES: Record<string, string> = {
  R: "red", Y: "yellow", G: "green", W: "white", B: "blue",
};

function esc(text: string): string {
  return text.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

function cardSpan(text: string): string {
  const color = text.charAt(0);
  return `<span class="card color-${esc(COLOR_NAMES[color] ?? "unknown")}">${esc(text)}</span>`;
}

function boardHtml(view: ClientView): string {
  const s = view.state!;
  const cfg = view.config!;
  const stacks = s.fireworks
    .map((h, c) => `${COLOR_ORDER.charAt(c)}:${h}`)
    .join(" ");
  return (
    `<div class="board">` +
    `<span class="stacks">stacks ${esc(stacks)}</span> ` +
    `<span class="tokens">tokens ${s.info_tokens}/${cfg.max_info_tokens}</span> ` +
    `<span class="lives">lives ${s.lives}/${cfg.max_lives}</span> ` +
    `<span class="deck">deck ${s.deck_size}</span>` +
    `</div>`
  );
}

function partnerHandsHtml(view: ClientView): string {
  const s = view.state!;
  const rows = Object.keys(s.hands)
    .sort()
    .map((seat) => {
      const cards = (s.hands[seat] ?? []).map(cardSpan).join(" ");
      const marker = Number(seat) === s.current_player ? " (to move)" : "";
      return `<div class="hand partner">seat ${esc(seat)}${marker}: ${cards}</div>`;
    });
  return rows.join("");
}

function ownHandHtml(view: ClientView): string {
  const badges = ownHandBadges(view);
  const slots = badges.map((b, i) => {
    const parts: string[] = [];
    if (b.hintedColor !== null) parts.push(`is ${COLOR_NAMES[b.hintedColor] ?? b.hintedColor}`);
    if (b.hintedRank !== null) parts.push(`is ${b.hintedRank}`);
    for (const c of b.notColors) parts.push(`not ${COLOR_NAMES[c] ?? c}`);
    for (const r of b.notRanks) parts.push(`not ${r}`);
    const label = parts.length > 0 ? ` (${parts.join(", ")})` : "";
    return `<span class="card facedown" data-slot="${i}">??${esc(label)}</span>`;
  });
  return `<div class="hand own">you: ${slots.join(" ")}</div>`;
}

function discardsHtml(view: ClientView): string {
  const cards = view.state!.discards.map(cardSpan).join(" ");
  return `<div class="discards">discards: ${cards}</div>`;
}

function movesHtml(view: ClientView): string {
  if (!view.myTurn || view.gameOver) return "";
  const buttons = view.legal.map((m, i) => {
    const label = describeMove(m, view.seat, view.seat).replace(/^you: /, "");
    return `<button class="move" data-move-idx="${i}">${esc(label)}</button>`;
  });
  return `<div class="moves">your turn: ${buttons.join(" ")}</div>`;
}

export function renderHtml(view: ClientView): string {
  if (view.gameOver) {
    const bombed = view.reason === "out_of_lives";
    return (
      `<div class="game-over${bombed ? " bomb-out" : ""}">` +
      `<h2>game over</h2>` +
      `<p class="score">score ${view.score}</p>` +
      `<p class="reason">${esc(view.reason ?? "")}</p>` +
      `</div>` +
      `<div class="log">${view.log.map((l) => `<div>${esc(l)}</div>`).join("")}</div>`
    );
  }
  if (view.state === null || view.config === null) {
    return `<div class="connecting">waiting for snapshot...</div>`;
  }
  const error = view.error === null ? "" : `<div class="error">${esc(view.error)}</div>`;
  const last = view.log.length > 0 ? `<div class="last">${esc(view.log[view.log.length - 1]!)}</div>` : "";
  return (
    error +
    boardHtml(view) +
    partnerHandsHtml(view) +
    ownHandHtml(view) +
    discardsHtml(view) +
    last +
    movesHtml(view)
  );
}

export function mount(
  root: HTMLElement,
  view: ClientView,
  submit: (move: Move) => void,
): void {
  root.innerHTML = renderHtml(view);
  root.querySelectorAll<HTMLButtonElement>("button[data-move-idx]").forEach((btn) => {
    btn.addEventListener("click", () => {
      const idx = Number(btn.dataset.moveIdx);
      const move = view.legal[idx];
      if (move !== undefined) submit(move);
    });
  });
}
