// Wire types for the hnb-ws-v1 play-service protocol. The client is a
// pure mirror of these messages: it holds no rules logic of its own.

export interface GameConfig {
  players: number;
  colors: number;
  ranks: number;
  hand_size: number;
  max_info_tokens: number;
  max_lives: number;
  rank_counts: number[];
  scoring_mode: string;
}

export interface Move {
  kind: "play" | "discard" | "reveal_color" | "reveal_rank";
  slot?: number;
  target_offset?: number;
  target?: number;
  color?: number;
  color_char?: string;
  rank?: number;
}

export interface SlotKnowledge {
  colors: string; // plausible color chars, subset of "RYGWB"
  ranks: number[];
  hinted_color: string | null;
  hinted_rank: number | null;
}

export interface CensoredState {
  seat: number;
  players: number;
  current_player: number;
  turn: number;
  fireworks: number[];
  info_tokens: number;
  lives: number;
  deck_size: number;
  discards: string[];
  hands: Record<string, string[]>; // keyed by seat; never includes our own
  own_hand_size: number;
  knowledge: Record<string, SlotKnowledge[]>;
  score: number;
  game_over: boolean;
}

export interface Outcome {
  actor: number;
  move: Move;
  revealed: string | null;
  success: boolean | null;
  info_delta: number;
  life_delta: number;
  touched: number[];
  drew: boolean;
}

interface MessageBase {
  session: string;
  seq: number;
}

export interface HelloMessage extends MessageBase {
  type: "hello";
  seat: number;
  players: number;
  config: GameConfig;
  protocol: string;
}

export interface SnapshotMessage extends MessageBase {
  type: "snapshot";
  state: CensoredState;
}

export interface YourTurnMessage extends MessageBase {
  type: "your_turn";
  turn: number;
  legal: Move[];
}

export interface OutcomeMessage extends MessageBase {
  type: "outcome";
  outcome: Outcome;
  state: CensoredState;
}

export interface GameOverMessage extends MessageBase {
  type: "game_over";
  score: number;
  reason: string;
}

export interface ErrorMessage {
  type: "error";
  reason: string;
  detail: string;
  seq?: number;
}

export type ServerMessage =
  | HelloMessage
  | SnapshotMessage
  | YourTurnMessage
  | OutcomeMessage
  | GameOverMessage
  | ErrorMessage;

export interface MoveSubmission {
  type: "move";
  move: Move;
}
