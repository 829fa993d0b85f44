"""Live-play session server: humans and bots share a table over WebSocket.

Protocol (JSON messages, every one carrying ``session`` and a per-session
monotonically increasing ``seq``):

  server -> client
    hello      {seat, players, config, protocol}
    snapshot   {state}           censored for the receiving seat
    your_turn  {turn, legal}     legal moves enumerated server-side
    outcome    {outcome, state}  resolved move, public to everyone
    game_over  {score, reason}
    error      {reason, detail}
  client -> server
    move       {move}            only accepted on the seat's turn

A seat's connection only ever receives ``observe(state, seat)``: the
``hands`` object in snapshots is keyed by the other seats, so own card
identities never cross the wire.  All legality lives server-side; a
rejected move names the violated rule and does not advance the game.

REST: ``POST /sessions`` creates a session (bots act immediately until a
human seat is up), ``GET /healthz`` reports session counts.
"""

from __future__ import annotations

import asyncio
import secrets
import threading
from pathlib import Path

from fastapi import FastAPI, WebSocket, WebSocketDisconnect
from fastapi.responses import JSONResponse

from .agents import Agent, UnknownAgentError, create_agent
from .cards import COLOR_CHARS, Card, ConfigError, GameConfig
from .game import (
    GameState,
    IllegalMoveError,
    Move,
    MoveKind,
    MoveOutcome,
    apply_move,
    final_score,
    is_terminal,
    legal_moves,
    new_game,
)
from .observation import ObsMode, observe
from .replay import move_to_dict, record, write as write_replay

PROTOCOL_VERSION = "hnb-ws-v1"
HUMAN = "human"

_KIND_NAMES = {
    MoveKind.PLAY: "play",
    MoveKind.DISCARD: "discard",
    MoveKind.REVEAL_COLOR: "reveal_color",
    MoveKind.REVEAL_RANK: "reveal_rank",
}
_KIND_FROM_NAME = {v: k for k, v in _KIND_NAMES.items()}


class ProtocolError(ValueError):
    """A client message the server cannot honor; carries the rule name."""

    def __init__(self, reason: str, detail: str = ""):
        super().__init__(detail or reason)
        self.reason = reason
        self.detail = detail


def parse_move(data: dict, seat: int, players: int) -> Move:
    """Build a Move from the wire form, resolving absolute hint targets."""
    if not isinstance(data, dict):
        raise ProtocolError("malformed-move", "move must be an object")
    kind = _KIND_FROM_NAME.get(data.get("kind"))
    if kind is None:
        raise ProtocolError("malformed-move", f"unknown kind {data.get('kind')!r}")
    if kind in (MoveKind.PLAY, MoveKind.DISCARD):
        slot = data.get("slot")
        if not isinstance(slot, int):
            raise ProtocolError("malformed-move", "play/discard needs an integer slot")
        return Move(kind, slot=slot)
    if "target" in data:
        target = data["target"]
        if not isinstance(target, int) or not 0 <= target < players:
            raise ProtocolError("malformed-move", f"bad target seat {target!r}")
        offset = (target - seat) % players
    else:
        offset = data.get("target_offset")
    if not isinstance(offset, int) or not 1 <= offset < players:
        raise ProtocolError("malformed-move", f"bad target offset {offset!r}")
    if kind is MoveKind.REVEAL_COLOR:
        color = data.get("color")
        if isinstance(color, str):
            color = COLOR_CHARS.find(color)
        if not isinstance(color, int) or color < 0:
            raise ProtocolError("malformed-move", f"bad color {data.get('color')!r}")
        return Move.reveal_color(offset, color)
    rank = data.get("rank")
    if not isinstance(rank, int):
        raise ProtocolError("malformed-move", f"bad rank {rank!r}")
    return Move.reveal_rank(offset, rank)


def move_wire(move: Move, actor: int, players: int) -> dict:
    """Outgoing move form: replay fields plus the absolute hint target."""
    d = move_to_dict(move)
    if move.is_reveal:
        d["target"] = (actor + move.target_offset) % players
        if move.color is not None:
            d["color_char"] = COLOR_CHARS[move.color]
    return d


def _knowledge_wire(k) -> dict:
    colors = "".join(
        COLOR_CHARS[c] for c in range(len(COLOR_CHARS)) if k.color_mask >> c & 1)
    ranks = [r for r in range(1, 9) if k.rank_mask >> (r - 1) & 1]
    return {
        "colors": colors,
        "ranks": ranks,
        "hinted_color": COLOR_CHARS[k.hinted_color] if k.hinted_color is not None else None,
        "hinted_rank": k.hinted_rank,
    }


def censored_state(state: GameState, seat: int) -> dict:
    """JSON state for one seat; hands keyed by the *other* seats only."""
    obs = observe(state, seat, ObsMode.DEFAULT, include_legal=False)
    p = state.config.players
    hands = {}
    knowledge = {}
    for off in range(1, p):
        other = (seat + off) % p
        hands[str(other)] = [c.text() for c in obs.other_hands[off - 1]]
    for off in range(p):
        player = (seat + off) % p
        knowledge[str(player)] = [_knowledge_wire(k) for k in obs.knowledge[off]]
    reason = is_terminal(state)
    return {
        "seat": seat,
        "players": p,
        "current_player": state.current_player,
        "turn": state.turn_index,
        "fireworks": list(state.fireworks),
        "info_tokens": state.info_tokens,
        "lives": state.lives,
        "deck_size": state.deck_size,
        "discards": [c.text() for c in state.discard_pile],
        "hands": hands,
        "own_hand_size": obs.own_hand_size,
        "knowledge": knowledge,
        "score": final_score(state) if reason is not None else state.score,
        "game_over": reason is not None,
    }


def outcome_wire(outcome: MoveOutcome, players: int) -> dict:
    return {
        "actor": outcome.actor,
        "move": move_wire(outcome.move, outcome.actor, players),
        "revealed": outcome.revealed_card.text() if outcome.revealed_card else None,
        "success": outcome.success,
        "info_delta": outcome.info_token_delta,
        "life_delta": outcome.life_delta,
        "touched": [
            i for i in range(16) if outcome.touched_slots >> i & 1],
        "drew": outcome.drawn,
    }


class Session:
    """One table: config, seat roster, live game, connected sockets."""

    def __init__(self, session_id: str, config: GameConfig,
                 seats: list[str], seed: int):
        self.id = session_id
        self.config = config
        self.seats = seats
        self.seed = seed
        self.state: GameState = new_game(config, seed)
        self.seq = 0
        self.lock = asyncio.Lock()
        self.sockets: dict[int, WebSocket] = {}
        self.agents: dict[int, Agent] = {}
        self.replay_written = False
        for seat, spec in enumerate(seats):
            if spec != HUMAN:
                agent = create_agent(spec)
                agent.reset()
                agent.begin_episode(seat, config)
                self.agents[seat] = agent

    def next_seq(self) -> int:
        self.seq += 1
        return self.seq

    @property
    def game_over(self) -> bool:
        return is_terminal(self.state) is not None

    def message(self, msg_type: str, **fields) -> dict:
        return {"type": msg_type, "session": self.id,
                "seq": self.next_seq(), **fields}


class PlayService:
    """The session registry plus the per-session move loop."""

    def __init__(self, replay_dir: str | Path | None = None,
                 bot_delay: float = 0.0):
        self.replay_dir = Path(replay_dir) if replay_dir else None
        self.bot_delay = bot_delay
        self.sessions: dict[str, Session] = {}
        self.registry_lock = threading.Lock()

    def create_session(self, config: GameConfig, seats: list[str],
                       seed: int | None = None) -> Session:
        config.validate()
        if len(seats) != config.players:
            raise ConfigError(
                f"{config.players}-player config needs {config.players} seats, "
                f"got {len(seats)}")
        for spec in seats:
            if spec != HUMAN:
                create_agent(spec)  # fail fast on unknown specs
        if seed is None:
            seed = secrets.randbits(63)
        session = Session(secrets.token_hex(8), config, seats, seed)
        with self.registry_lock:
            self.sessions[session.id] = session
        return session

    def get(self, session_id: str) -> Session:
        with self.registry_lock:
            session = self.sessions.get(session_id)
        if session is None:
            raise ProtocolError("unknown-session", f"no session {session_id!r}")
        return session

    # -- message fan-out ---------------------------------------------------

    async def _send(self, session: Session, seat: int, message: dict) -> None:
        socket = session.sockets.get(seat)
        if socket is None:
            return
        try:
            await socket.send_json(message)
        except Exception:
            session.sockets.pop(seat, None)

    async def _broadcast_outcome(self, session: Session,
                                 outcome: MoveOutcome) -> None:
        p = session.config.players
        wire = outcome_wire(outcome, p)
        for seat in list(session.sockets):
            await self._send(session, seat, session.message(
                "outcome", outcome=wire,
                state=censored_state(session.state, seat)))

    async def _announce_turn(self, session: Session) -> None:
        if session.game_over:
            await self._finish(session)
            return
        seat = session.state.current_player
        if session.seats[seat] != HUMAN:
            return
        legal = legal_moves(session.state)
        await self._send(session, seat, session.message(
            "your_turn", turn=session.state.turn_index,
            legal=[move_wire(m, seat, session.config.players) for m in legal]))

    async def _finish(self, session: Session) -> None:
        reason = is_terminal(session.state)
        score = final_score(session.state)
        for seat in list(session.sockets):
            await self._send(session, seat, session.message(
                "game_over", score=score, reason=reason.value))
        if self.replay_dir is not None and not session.replay_written:
            self.replay_dir.mkdir(parents=True, exist_ok=True)
            replay = record(session.state, session.seats)
            write_replay(replay, self.replay_dir / f"{session.id}.hnb.jsonl")
            session.replay_written = True

    # -- game progression --------------------------------------------------

    async def _apply(self, session: Session, move: Move) -> None:
        state, outcome = apply_move(session.state, move)
        session.state = state
        for agent in session.agents.values():
            agent.observe_outcome(outcome)
        await self._broadcast_outcome(session, outcome)

    async def _run_bots(self, session: Session) -> None:
        while not session.game_over:
            seat = session.state.current_player
            agent = session.agents.get(seat)
            if agent is None:
                break
            if self.bot_delay:
                await asyncio.sleep(self.bot_delay)
            obs = observe(session.state, seat, ObsMode.DEFAULT)
            await self._apply(session, agent.act(obs))
        await self._announce_turn(session)

    async def submit_move(self, session: Session, seat: int,
                          data: dict) -> None:
        """Validate and apply a human move, then let bots follow."""
        if session.game_over:
            raise ProtocolError("game-over", "the game has already ended")
        if session.state.current_player != seat:
            raise ProtocolError(
                "not-your-turn",
                f"it is seat {session.state.current_player}'s turn")
        move = parse_move(data, seat, session.config.players)
        try:
            await self._apply(session, move)
        except IllegalMoveError as exc:
            raise ProtocolError("illegal-move", str(exc)) from exc
        await self._run_bots(session)

    # -- connection lifecycle ----------------------------------------------

    async def join(self, session: Session, seat: int,
                   socket: WebSocket) -> None:
        if not 0 <= seat < session.config.players:
            raise ProtocolError("unknown-seat", f"no seat {seat}")
        if session.seats[seat] != HUMAN:
            raise ProtocolError("unknown-seat", f"seat {seat} is a bot seat")
        session.sockets[seat] = socket
        await self._send(session, seat, session.message(
            "hello", seat=seat, players=session.config.players,
            config=session.config.to_dict(), protocol=PROTOCOL_VERSION))
        await self._send(session, seat, session.message(
            "snapshot", state=censored_state(session.state, seat)))
        if session.game_over:
            await self._finish(session)
        elif session.state.current_player == seat:
            await self._announce_turn(session)

    def leave(self, session: Session, seat: int) -> None:
        session.sockets.pop(seat, None)


def create_app(replay_dir: str | Path | None = None,
               bot_delay: float = 0.0) -> FastAPI:
    """FastAPI application wrapping a fresh PlayService."""
    service = PlayService(replay_dir=replay_dir, bot_delay=bot_delay)
    app = FastAPI(title="hanabi play service")
    app.state.service = service

    @app.get("/healthz")
    def healthz():
        with service.registry_lock:
            sessions = list(service.sessions.values())
        return {
            "status": "ok",
            "sessions": len(sessions),
            "active_games": sum(1 for s in sessions if not s.game_over),
        }

    @app.post("/sessions")
    async def create_session(body: dict):
        try:
            config = (GameConfig.from_dict(body["config"])
                      if "config" in body
                      else GameConfig.standard(body.get("players", 2)))
            seats = body.get("seats")
            if seats is None:
                seats = [HUMAN] + ["hat"] * (config.players - 1)
            session = service.create_session(
                config, list(seats), body.get("seed"))
        except (ConfigError, UnknownAgentError, KeyError, TypeError) as exc:
            return JSONResponse(
                status_code=400,
                content={"error": "bad-request", "detail": str(exc)})
        # A table of bots plays itself out immediately.
        async with session.lock:
            await service._run_bots(session)
        return {
            "session": session.id,
            "seats": session.seats,
            "config": session.config.to_dict(),
        }

    @app.websocket("/ws/{session_id}/{seat}")
    async def ws_endpoint(socket: WebSocket, session_id: str, seat: int):
        await socket.accept()
        try:
            session = service.get(session_id)
            async with session.lock:
                await service.join(session, seat, socket)
        except ProtocolError as exc:
            await socket.send_json({
                "type": "error", "session": session_id, "seq": 0,
                "reason": exc.reason, "detail": exc.detail})
            await socket.close()
            return
        try:
            while True:
                data = await socket.receive_json()
                if not isinstance(data, dict) or data.get("type") != "move":
                    await socket.send_json(session.message(
                        "error", reason="malformed-message",
                        detail="expected a move message"))
                    continue
                async with session.lock:
                    try:
                        await service.submit_move(
                            session, seat, data.get("move"))
                    except ProtocolError as exc:
                        await socket.send_json(session.message(
                            "error", reason=exc.reason, detail=exc.detail))
        except WebSocketDisconnect:
            service.leave(session, seat)

    return app
