// Client view state and the pure reconcile step. Replaying the same
// message transcript always yields the same view: reconcile never reads
// clocks, randomness, or anything outside (view, message).

import type {
  CensoredState,
  GameConfig,
  Move,
  Outcome,
  ServerMessage,
  SlotKnowledge,
} from "./protocol.js";

export interface ClientView {
  seat: number;
  players: number;
  config: GameConfig | null;
  state: CensoredState | null;
  legal: Move[];
  myTurn: boolean;
  lastOutcome: Outcome | null;
  gameOver: boolean;
  score: number | null;
  reason: string | null;
  error: string | null;
  seq: number;
  log: string[];
}

export function initialView(): ClientView {
  return {
    seat: -1,
    players: 0,
    config: null,
    state: null,
    legal: [],
    myTurn: false,
    lastOutcome: null,
    gameOver: false,
    score: null,
    reason: null,
    error: null,
    seq: -1,
    log: [],
  };
}

export function describeMove(move: Move, actor: number, seat: number): string {
  const who = actor === seat ? "you" : `seat ${actor}`;
  switch (move.kind) {
    case "play":
      return `${who}: play slot ${move.slot}`;
    case "discard":
      return `${who}: discard slot ${move.slot}`;
    case "reveal_color":
      return `${who}: hint ${move.color_char ?? move.color} to seat ${move.target}`;
    case "reveal_rank":
      return `${who}: hint rank ${move.rank} to seat ${move.target}`;
  }
}

function describeOutcome(outcome: Outcome, seat: number): string {
  let line = describeMove(outcome.move, outcome.actor, seat);
  if (outcome.revealed !== null) {
    line += ` (${outcome.revealed}${outcome.success === false ? ", misfire" : ""})`;
  }
  return line;
}

export function reconcile(view: ClientView, msg: ServerMessage): ClientView {
  if (msg.type === "error") {
    // surfaced verbatim; does not advance game state
    return { ...view, error: `${msg.reason}: ${msg.detail}` };
  }
  if (msg.seq <= view.seq) {
    return view; // duplicate or stale delivery
  }
  const next: ClientView = { ...view, seq: msg.seq, error: null };
  switch (msg.type) {
    case "hello":
      next.seat = msg.seat;
      next.players = msg.players;
      next.config = msg.config;
      return next;
    case "snapshot":
      next.state = msg.state;
      next.legal = [];
      next.myTurn = false;
      return next;
    case "your_turn":
      next.legal = msg.legal;
      next.myTurn = true;
      return next;
    case "outcome":
      next.state = msg.state;
      next.lastOutcome = msg.outcome;
      next.legal = [];
      next.myTurn = false;
      next.log = [...view.log, describeOutcome(msg.outcome, view.seat)];
      return next;
    case "game_over":
      next.gameOver = true;
      next.score = msg.score;
      next.reason = msg.reason;
      next.legal = [];
      next.myTurn = false;
      next.log = [...view.log, `game over: ${msg.score} (${msg.reason})`];
      return next;
  }
}

export interface SlotBadges {
  hintedColor: string | null;
  hintedRank: number | null;
  notColors: string[]; // ruled out by negative information
  notRanks: number[];
}

const COLOR_ORDER = "RYGWB";

// Badges for the viewer's own face-down hand: positive hints plus the
// colors/ranks excluded by negative information. Card identities are
// never available here by construction.
export function ownHandBadges(view: ClientView): SlotBadges[] {
  if (view.state === null || view.config === null) return [];
  const know: SlotKnowledge[] = view.state.knowledge[String(view.seat)] ?? [];
  const allColors = COLOR_ORDER.slice(0, view.config.colors).split("");
  const allRanks = Array.from({ length: view.config.ranks }, (_, i) => i + 1);
  return know.map((k) => ({
    hintedColor: k.hinted_color,
    hintedRank: k.hinted_rank,
    notColors: allColors.filter((c) => !k.colors.includes(c)),
    notRanks: allRanks.filter((r) => !k.ranks.includes(r)),
  }));
}
