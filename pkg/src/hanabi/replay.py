"""Deterministic replay records and the `.hnb.jsonl` file format.

A replay file is JSON lines: a header object (format version, config,
seed, explicit deck order, agent specs, final score when known) followed
by one event object per resolved move.  Storing both the seed and the deck
keeps files portable even across implementations with a different PRNG.
Files are append-only while recording; a truncated file loads as a valid
partial game.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .cards import Card, GameConfig
from .game import (
    GameState,
    IllegalMoveError,
    Move,
    MoveKind,
    MoveOutcome,
    apply_move,
    deal_game,
    final_score,
    is_terminal,
    new_game,
)
from .rng import RNG_VERSION

FORMAT_VERSION = "hnb-v1"

_KIND_NAMES = {
    MoveKind.PLAY: "play",
    MoveKind.DISCARD: "discard",
    MoveKind.REVEAL_COLOR: "reveal_color",
    MoveKind.REVEAL_RANK: "reveal_rank",
}
_KIND_FROM_NAME = {v: k for k, v in _KIND_NAMES.items()}


class ReplayError(ValueError):
    pass


def move_to_dict(move: Move) -> dict:
    d = {"kind": _KIND_NAMES[move.kind]}
    if move.slot is not None:
        d["slot"] = move.slot
    if move.target_offset is not None:
        d["target_offset"] = move.target_offset
    if move.color is not None:
        d["color"] = move.color
    if move.rank is not None:
        d["rank"] = move.rank
    return d


def move_from_dict(d: dict) -> Move:
    return Move(
        kind=_KIND_FROM_NAME[d["kind"]],
        slot=d.get("slot"),
        target_offset=d.get("target_offset"),
        color=d.get("color"),
        rank=d.get("rank"),
    )


def outcome_to_dict(outcome: MoveOutcome) -> dict:
    return {
        "actor": outcome.actor,
        "move": move_to_dict(outcome.move),
        "revealed": outcome.revealed_card.text() if outcome.revealed_card else None,
        "success": outcome.success,
        "info_delta": outcome.info_token_delta,
        "life_delta": outcome.life_delta,
        "touched": outcome.touched_slots,
        "drawn": outcome.drawn,
    }


def outcome_from_dict(d: dict) -> MoveOutcome:
    return MoveOutcome(
        actor=d["actor"],
        move=move_from_dict(d["move"]),
        revealed_card=Card.from_text(d["revealed"]) if d.get("revealed") else None,
        success=d.get("success"),
        info_token_delta=d.get("info_delta", 0),
        life_delta=d.get("life_delta", 0),
        touched_slots=d.get("touched", 0),
        drawn=d.get("drawn", False),
    )


@dataclass
class Replay:
    config: GameConfig
    seed: int | None
    deck: list[Card]
    outcomes: list[MoveOutcome] = field(default_factory=list)
    final_score: int | None = None
    agent_specs: list[str] = field(default_factory=list)
    rng_version: str = RNG_VERSION
    format_version: str = FORMAT_VERSION

    def header_dict(self) -> dict:
        return {
            "format": self.format_version,
            "rng": self.rng_version,
            "config": self.config.to_dict(),
            "seed": self.seed,
            "deck": [c.text() for c in self.deck],
            "agents": self.agent_specs,
            "final_score": self.final_score,
        }


def record(state: GameState, agent_specs: list[str] | None = None) -> Replay:
    """Build a replay record from a (possibly finished) game state."""
    score = final_score(state) if is_terminal(state) is not None else None
    return Replay(
        config=state.config,
        seed=state.seed,
        deck=list(state.deal),
        outcomes=list(state.history),
        final_score=score,
        agent_specs=list(agent_specs or []),
    )


def write(replay: Replay, path) -> None:
    path = Path(path)
    with path.open("w") as f:
        f.write(json.dumps(replay.header_dict(), separators=(",", ":")) + "\n")
        for outcome in replay.outcomes:
            f.write(json.dumps(outcome_to_dict(outcome), separators=(",", ":")) + "\n")


def read(path) -> Replay:
    path = Path(path)
    with path.open() as f:
        lines = f.read().splitlines()
    if not lines:
        raise ReplayError(f"{path}: empty replay file")
    try:
        header = json.loads(lines[0])
    except json.JSONDecodeError as exc:
        raise ReplayError(f"{path}:1: corrupt header: {exc}") from exc
    if header.get("format") != FORMAT_VERSION:
        raise ReplayError(
            f"{path}: unsupported format {header.get('format')!r}, "
            f"expected {FORMAT_VERSION}")
    replay = Replay(
        config=GameConfig.from_dict(header["config"]),
        seed=header.get("seed"),
        deck=[Card.from_text(t) for t in header["deck"]],
        final_score=header.get("final_score"),
        agent_specs=header.get("agents", []),
        rng_version=header.get("rng", RNG_VERSION),
    )
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        try:
            replay.outcomes.append(outcome_from_dict(json.loads(line)))
        except (json.JSONDecodeError, KeyError, ValueError) as exc:
            raise ReplayError(f"{path}:{lineno}: corrupt event: {exc}") from exc
    return replay


@dataclass
class Divergence:
    turn: int
    detail: str

    def __str__(self) -> str:
        return f"divergence at turn {self.turn}: {self.detail}"


def simulate(replay: Replay) -> GameState:
    """Starting state for a replay (explicit deck wins over the seed)."""
    if replay.rng_version != RNG_VERSION:
        raise ReplayError(
            f"replay recorded with PRNG {replay.rng_version!r}; "
            f"this implementation is {RNG_VERSION!r}")
    if replay.seed is not None:
        state = new_game(replay.config, replay.seed)
        if list(state.deal) != replay.deck:
            raise ReplayError("deck in header does not match the seeded shuffle")
        return state
    return deal_game(replay.config, replay.deck)


def verify(replay: Replay) -> Divergence | None:
    """Re-simulate every move and diff the recorded outcomes.

    Returns None when the replay checks out, otherwise the first
    divergence (turn index and what differed).
    """
    try:
        state = simulate(replay)
    except ReplayError as exc:
        return Divergence(-1, str(exc))
    for turn, recorded in enumerate(replay.outcomes):
        if is_terminal(state) is not None:
            return Divergence(turn, "moves continue past the end of the game")
        try:
            state, outcome = apply_move(state, recorded.move)
        except IllegalMoveError as exc:
            return Divergence(turn, f"illegal move {recorded.move.text()}: {exc}")
        if outcome != recorded:
            return Divergence(
                turn, f"outcome mismatch: recorded {recorded!r}, got {outcome!r}")
    if replay.final_score is not None:
        if is_terminal(state) is None:
            return Divergence(len(replay.outcomes),
                              "header has a final score but the game is unfinished")
        got = final_score(state)
        if got != replay.final_score:
            return Divergence(len(replay.outcomes),
                              f"final score {got} != header {replay.final_score}")
    return None
