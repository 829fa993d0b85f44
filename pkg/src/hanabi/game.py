"""The authoritative Hanabi state machine.

States are values: every operation returns a new state and never mutates
its input.  Internally states share structure (hands and knowledge are
tuples, the deck is a fixed dealing order plus a draw cursor) so that one
turn costs a handful of small allocations.  This keeps the hot path of
``legal_moves`` + ``apply_move`` + ``observe`` well under the 0.1 ms/turn
budget in pure Python.
"""

from __future__ import annotations

import enum
from typing import NamedTuple, Optional

from .cards import Card, ConfigError, GameConfig, ScoringMode, standard_deck
from .knowledge import (
    CardKnowledge,
    apply_color_reveal,
    apply_rank_reveal,
    full_knowledge,
)
from .rng import RNG_VERSION, GameRng


class MoveKind(enum.IntEnum):
    PLAY = 0
    DISCARD = 1
    REVEAL_COLOR = 2
    REVEAL_RANK = 3


class Move(NamedTuple):
    """One of Play(slot), Discard(slot), RevealColor/RevealRank(target, value).

    ``target_offset`` is relative to the actor, in [1, players).  Unused
    fields are None.
    """

    kind: MoveKind
    slot: Optional[int] = None
    target_offset: Optional[int] = None
    color: Optional[int] = None
    rank: Optional[int] = None

    @classmethod
    def play(cls, slot: int) -> "Move":
        return cls(MoveKind.PLAY, slot=slot)

    @classmethod
    def discard(cls, slot: int) -> "Move":
        return cls(MoveKind.DISCARD, slot=slot)

    @classmethod
    def reveal_color(cls, target_offset: int, color: int) -> "Move":
        return cls(MoveKind.REVEAL_COLOR, target_offset=target_offset, color=color)

    @classmethod
    def reveal_rank(cls, target_offset: int, rank: int) -> "Move":
        return cls(MoveKind.REVEAL_RANK, target_offset=target_offset, rank=rank)

    @property
    def is_reveal(self) -> bool:
        return self.kind is MoveKind.REVEAL_COLOR or self.kind is MoveKind.REVEAL_RANK

    def text(self) -> str:
        from .cards import COLOR_CHARS

        if self.kind is MoveKind.PLAY:
            return f"play {self.slot}"
        if self.kind is MoveKind.DISCARD:
            return f"discard {self.slot}"
        if self.kind is MoveKind.REVEAL_COLOR:
            return f"hint +{self.target_offset} color {COLOR_CHARS[self.color]}"
        return f"hint +{self.target_offset} rank {self.rank}"


class MoveOutcome:
    """Public record of one resolved move; every player observes it."""

    __slots__ = ("actor", "move", "revealed_card", "success",
                 "info_token_delta", "life_delta", "touched_slots", "drawn")

    def __init__(self, actor: int, move: Move, revealed_card: Card | None = None,
                 success: bool | None = None, info_token_delta: int = 0,
                 life_delta: int = 0, touched_slots: int = 0, drawn: bool = False):
        self.actor = actor
        self.move = move
        self.revealed_card = revealed_card
        self.success = success
        self.info_token_delta = info_token_delta
        self.life_delta = life_delta
        self.touched_slots = touched_slots
        self.drawn = drawn

    def __eq__(self, other) -> bool:
        return isinstance(other, MoveOutcome) and all(
            getattr(self, f) == getattr(other, f) for f in MoveOutcome.__slots__
        )

    def __repr__(self) -> str:
        return (f"MoveOutcome(actor={self.actor}, move={self.move.text()!r}, "
                f"revealed={self.revealed_card and self.revealed_card.text()}, "
                f"success={self.success}, touched={self.touched_slots:b}, "
                f"drawn={self.drawn})")


class TerminalReason(enum.Enum):
    ALL_STACKS_COMPLETE = "all_stacks_complete"
    OUT_OF_LIVES = "out_of_lives"
    DECK_EXHAUSTED = "deck_exhausted"


class IllegalMoveError(ValueError):
    """A move that violates the rules; the state is left untouched."""


class _ConfigTables:
    """Precomputed move instances and legality scaffolding for one config."""

    __slots__ = ("play_moves", "discard_moves", "color_moves", "rank_moves")

    def __init__(self, config: GameConfig):
        self.play_moves = [Move.play(s) for s in range(config.hand_size)]
        self.discard_moves = [Move.discard(s) for s in range(config.hand_size)]
        self.color_moves = {
            (off, c): Move.reveal_color(off, c)
            for off in range(1, config.players)
            for c in range(config.colors)
        }
        self.rank_moves = {
            (off, r): Move.reveal_rank(off, r)
            for off in range(1, config.players)
            for r in range(1, config.ranks + 1)
        }


_TABLES: dict[tuple, _ConfigTables] = {}


def config_tables(config: GameConfig) -> _ConfigTables:
    key = (config.players, config.colors, config.ranks, config.hand_size)
    t = _TABLES.get(key)
    if t is None:
        t = _ConfigTables(config)
        _TABLES[key] = t
    return t


class GameState:
    """Full authoritative state.  Treat as immutable."""

    __slots__ = ("config", "deal", "deck_pos", "hands", "fireworks",
                 "info_tokens", "lives", "discard_pile", "current_player",
                 "final_round_countdown", "history", "knowledge", "seed")

    def __init__(self, config: GameConfig, deal: tuple[Card, ...], deck_pos: int,
                 hands: tuple[tuple[Card, ...], ...], fireworks: tuple[int, ...],
                 info_tokens: int, lives: int, discard_pile: tuple[Card, ...],
                 current_player: int, final_round_countdown: int | None,
                 history: tuple[MoveOutcome, ...],
                 knowledge: tuple[tuple[CardKnowledge, ...], ...],
                 seed: int | None = None):
        self.config = config
        self.deal = deal
        self.deck_pos = deck_pos
        self.hands = hands
        self.fireworks = fireworks
        self.info_tokens = info_tokens
        self.lives = lives
        self.discard_pile = discard_pile
        self.current_player = current_player
        self.final_round_countdown = final_round_countdown
        self.history = history
        self.knowledge = knowledge
        self.seed = seed

    @property
    def deck(self) -> tuple[Card, ...]:
        """Remaining undrawn cards, next draw first."""
        return self.deal[self.deck_pos:]

    @property
    def deck_size(self) -> int:
        return len(self.deal) - self.deck_pos

    @property
    def score(self) -> int:
        return sum(self.fireworks)

    @property
    def turn_index(self) -> int:
        return len(self.history)


def new_game(config: GameConfig, seed: int) -> GameState:
    """Deal a fresh game: deck shuffled by the documented PRNG from ``seed``."""
    config.validate()
    deck = standard_deck(config)
    GameRng(seed).shuffle(deck)
    return deal_game(config, deck, seed=seed)


def deal_game(config: GameConfig, deck: list[Card], seed: int | None = None) -> GameState:
    """Start a game from an explicit dealing order (replays, tests)."""
    p, h = config.players, config.hand_size
    hands = tuple(tuple(deck[slot * p + player] for slot in range(h))
                  for player in range(p))
    fresh = full_knowledge(config)
    knowledge = tuple(tuple(fresh for _ in range(h)) for _ in range(p))
    return GameState(
        config=config,
        deal=tuple(deck),
        deck_pos=p * h,
        hands=hands,
        fireworks=(0,) * config.colors,
        info_tokens=config.max_info_tokens,
        lives=config.max_lives,
        discard_pile=(),
        current_player=0,
        final_round_countdown=None,
        history=(),
        knowledge=knowledge,
        seed=seed,
    )


def is_terminal(state: GameState) -> TerminalReason | None:
    if state.lives == 0:
        return TerminalReason.OUT_OF_LIVES
    cfg = state.config
    if state.score == cfg.colors * cfg.ranks:
        return TerminalReason.ALL_STACKS_COMPLETE
    if state.final_round_countdown == 0:
        return TerminalReason.DECK_EXHAUSTED
    return None


def final_score(state: GameState) -> int:
    reason = is_terminal(state)
    if reason is None:
        raise ValueError("final_score called on a non-terminal state")
    if (reason is TerminalReason.OUT_OF_LIVES
            and state.config.scoring_mode is ScoringMode.ZERO_ON_BOMB_OUT):
        return 0
    return state.score


def legal_moves(state: GameState) -> list[Move]:
    """All legal moves for the current player, in canonical order.

    Order: Play slots ascending, Discard slots ascending (omitted at max
    tokens), then reveals by target offset with colors before ranks, values
    ascending (omitted entirely at zero tokens).
    """
    if is_terminal(state) is not None:
        raise ValueError("legal_moves called on a terminal state")
    cfg = state.config
    tables = config_tables(cfg)
    player = state.current_player
    hand = state.hands[player]
    moves = tables.play_moves[:len(hand)]
    if state.info_tokens < cfg.max_info_tokens:
        moves = moves + tables.discard_moves[:len(hand)]
    if state.info_tokens > 0:
        color_moves = tables.color_moves
        rank_moves = tables.rank_moves
        for off in range(1, cfg.players):
            target_hand = state.hands[(player + off) % cfg.players]
            colors_present = 0
            ranks_present = 0
            for card in target_hand:
                colors_present |= 1 << card.color
                ranks_present |= 1 << card.rank
            for c in range(cfg.colors):
                if colors_present >> c & 1:
                    moves.append(color_moves[(off, c)])
            for r in range(1, cfg.ranks + 1):
                if ranks_present >> r & 1:
                    moves.append(rank_moves[(off, r)])
    return moves


def apply_move(state: GameState, move: Move) -> tuple[GameState, MoveOutcome]:
    """Resolve one move, returning the successor state and the public outcome.

    Illegal moves raise IllegalMoveError with the violated rule; the input
    state is never modified.
    """
    if is_terminal(state) is not None:
        raise IllegalMoveError("the game is over")
    cfg = state.config
    player = state.current_player
    hand = state.hands[player]
    kind = move.kind

    deck_pos = state.deck_pos
    hands = state.hands
    knowledge = state.knowledge
    fireworks = state.fireworks
    info_tokens = state.info_tokens
    lives = state.lives
    discard_pile = state.discard_pile

    if kind is MoveKind.PLAY or kind is MoveKind.DISCARD:
        slot = move.slot
        if slot is None or not 0 <= slot < len(hand):
            raise IllegalMoveError(f"no card in slot {slot}")
        if kind is MoveKind.DISCARD and info_tokens >= cfg.max_info_tokens:
            raise IllegalMoveError("cannot discard at maximum information tokens")
        card = hand[slot]
        success = None
        life_delta = 0
        token_delta = 0
        if kind is MoveKind.PLAY:
            success = fireworks[card.color] == card.rank - 1
            if success:
                fireworks = fireworks[:card.color] + (card.rank,) + fireworks[card.color + 1:]
                if card.rank == cfg.ranks and info_tokens < cfg.max_info_tokens:
                    token_delta = 1
            else:
                discard_pile = discard_pile + (card,)
                life_delta = -1
                lives -= 1
        else:
            discard_pile = discard_pile + (card,)
            token_delta = 1
        info_tokens += token_delta

        new_hand = hand[:slot] + hand[slot + 1:]
        player_know = knowledge[player][:slot] + knowledge[player][slot + 1:]
        drawn = deck_pos < len(state.deal)
        if drawn:
            new_hand = new_hand + (state.deal[deck_pos],)
            player_know = player_know + (full_knowledge(cfg),)
            deck_pos += 1
        hands = hands[:player] + (new_hand,) + hands[player + 1:]
        knowledge = knowledge[:player] + (player_know,) + knowledge[player + 1:]
        outcome = MoveOutcome(
            actor=player, move=move, revealed_card=card, success=success,
            info_token_delta=token_delta, life_delta=life_delta, drawn=drawn,
        )
    else:
        if info_tokens <= 0:
            raise IllegalMoveError("no information tokens remain")
        off = move.target_offset
        if off is None or not 1 <= off < cfg.players:
            raise IllegalMoveError("hint target must be another player")
        target = (player + off) % cfg.players
        target_hand = hands[target]
        touched = 0
        if kind is MoveKind.REVEAL_COLOR:
            color = move.color
            if color is None or not 0 <= color < cfg.colors:
                raise IllegalMoveError("invalid hint color")
            for i, card in enumerate(target_hand):
                if card.color == color:
                    touched |= 1 << i
            if not touched:
                raise IllegalMoveError("cannot hint a color the target does not hold")
            target_know = apply_color_reveal(knowledge[target], color, touched)
        else:
            rank = move.rank
            if rank is None or not 1 <= rank <= cfg.ranks:
                raise IllegalMoveError("invalid hint rank")
            for i, card in enumerate(target_hand):
                if card.rank == rank:
                    touched |= 1 << i
            if not touched:
                raise IllegalMoveError("cannot hint a rank the target does not hold")
            target_know = apply_rank_reveal(knowledge[target], rank, touched)
        info_tokens -= 1
        knowledge = knowledge[:target] + (target_know,) + knowledge[target + 1:]
        outcome = MoveOutcome(
            actor=player, move=move, info_token_delta=-1, touched_slots=touched,
        )

    countdown = state.final_round_countdown
    if countdown is not None:
        countdown -= 1
    elif deck_pos == len(state.deal) and state.deck_pos < len(state.deal):
        # The last deck card was just drawn; everyone (including the drawer)
        # gets exactly one more turn.
        countdown = cfg.players

    successor = GameState(
        config=cfg,
        deal=state.deal,
        deck_pos=deck_pos,
        hands=hands,
        fireworks=fireworks,
        info_tokens=info_tokens,
        lives=lives,
        discard_pile=discard_pile,
        current_player=(player + 1) % cfg.players,
        final_round_countdown=countdown,
        history=state.history + (outcome,),
        knowledge=knowledge,
        seed=state.seed,
    )
    return successor, outcome
