"""Censored per-player views and the flat bit-vector encoding (enc-v1).

Encoding layout, in order (all relative player indexing starts at the
viewer; card one-hots are color-major, index = color * ranks + rank - 1):

  1. other hands      (P-1) * H * (C*R)   one-hot per visible card
  2. short-hand flags P                    1 if that player holds < H cards
  3. board            deck thermometer (deck_size - P*H bits),
                      fireworks C * R (thermometer per color),
                      info tokens (max_tokens bits, thermometer),
                      lives (max_lives bits, thermometer)
  4. discards         C * sum(rank_counts) (per color, per rank, thermometer
                      of discarded copies)
  5. last action      actor P, move type 4, target P, color C, rank R,
                      touched H, position H, card C*R, success + token-gain 2
  6. knowledge        P * H * (C*R plausible mask + hinted color C + hinted
                      rank R)

The layout is byte-order independent (a bit list) and versioned; it is our
canonical choice and is not claimed to be bit-compatible with any other
published encoding.
"""

from __future__ import annotations

import enum

from .cards import GameConfig
from .game import GameState, MoveKind, MoveOutcome, legal_moves, is_terminal
from .knowledge import CardKnowledge

ENCODING_VERSION = "enc-v1"


class ObsMode(enum.Enum):
    DEFAULT = "default"
    MINIMAL = "minimal"


class Observation:
    """One player's censored view of a state.

    Hands and knowledge are in viewer-relative order: ``other_hands[off-1]``
    is the hand of the player ``off`` seats after the viewer, and
    ``knowledge[off]`` that player's public hint knowledge (``knowledge[0]``
    is the viewer's own).  Own card identities are never present.
    """

    __slots__ = ("config", "viewer", "other_hands", "own_hand_size",
                 "fireworks", "info_tokens", "lives", "deck_size",
                 "discard_pile", "knowledge", "last_outcomes", "legal",
                 "current_player", "mode")

    def __init__(self, config, viewer, other_hands, own_hand_size, fireworks,
                 info_tokens, lives, deck_size, discard_pile, knowledge,
                 last_outcomes, legal, current_player, mode):
        self.config = config
        self.viewer = viewer
        self.other_hands = other_hands
        self.own_hand_size = own_hand_size
        self.fireworks = fireworks
        self.info_tokens = info_tokens
        self.lives = lives
        self.deck_size = deck_size
        self.discard_pile = discard_pile
        self.knowledge = knowledge
        self.last_outcomes = last_outcomes
        self.legal = legal
        self.current_player = current_player
        self.mode = mode

    @property
    def is_turn(self) -> bool:
        return self.current_player == self.viewer

    @property
    def players(self) -> int:
        return self.config.players


class EncodedObservation:
    """Flat bit vector of an observation plus its dimension."""

    __slots__ = ("bits", "dim")

    def __init__(self, bits: list[int], dim: int):
        self.bits = bits
        self.dim = dim

    def to_bytes(self) -> bytes:
        out = bytearray((self.dim + 7) // 8)
        for i, b in enumerate(self.bits):
            if b:
                out[i >> 3] |= 1 << (i & 7)
        return bytes(out)

    def __eq__(self, other) -> bool:
        return (isinstance(other, EncodedObservation)
                and self.dim == other.dim and self.bits == other.bits)


def observe(state: GameState, viewer: int, mode: ObsMode = ObsMode.DEFAULT,
            last_outcomes: tuple[MoveOutcome, ...] | None = None,
            include_legal: bool | None = None) -> Observation:
    """Project a state onto one player's censored view.

    ``last_outcomes`` defaults to everything that happened since the
    viewer's previous turn.  Knowledge is common: every viewer sees the same
    knowledge section.
    """
    cfg = state.config
    if not 0 <= viewer < cfg.players:
        raise ValueError(f"invalid viewer {viewer}")
    p = cfg.players
    other_hands = tuple(state.hands[(viewer + off) % p] for off in range(1, p))

    if mode is ObsMode.DEFAULT:
        knowledge = tuple(state.knowledge[(viewer + off) % p] for off in range(p))
    else:
        knowledge = _minimal_knowledge(state, viewer)

    if last_outcomes is None:
        last_outcomes = _outcomes_since_previous_turn(state, viewer)

    if include_legal is None:
        include_legal = state.current_player == viewer and is_terminal(state) is None
    legal = legal_moves(state) if include_legal else []

    return Observation(
        config=cfg,
        viewer=viewer,
        other_hands=other_hands,
        own_hand_size=len(state.hands[viewer]),
        fireworks=state.fireworks,
        info_tokens=state.info_tokens,
        lives=state.lives,
        deck_size=state.deck_size,
        discard_pile=state.discard_pile,
        knowledge=knowledge,
        last_outcomes=last_outcomes,
        legal=legal,
        current_player=state.current_player,
        mode=mode,
    )


def _outcomes_since_previous_turn(state: GameState, viewer: int) -> tuple[MoveOutcome, ...]:
    history = state.history
    for i in range(len(history) - 1, -1, -1):
        if history[i].actor == viewer:
            return history[i + 1:]
    return history


def _minimal_knowledge(state: GameState, viewer: int):
    """Knowledge carrying only the most recent reveal targeting the viewer."""
    cfg = state.config
    p = cfg.players
    empty = CardKnowledge((1 << cfg.colors) - 1, (1 << cfg.ranks) - 1)
    slots_per_player = [
        [empty] * len(state.hands[(viewer + off) % p]) for off in range(p)
    ]
    own = slots_per_player[0]
    for outcome in reversed(state.history):
        if not outcome.move.is_reveal:
            # A play/discard by the viewer invalidates older slot indices.
            if outcome.actor == viewer:
                break
            continue
        target = (outcome.actor + outcome.move.target_offset) % p
        if target != viewer:
            continue
        for i in range(len(own)):
            if outcome.touched_slots >> i & 1:
                if outcome.move.kind is MoveKind.REVEAL_COLOR:
                    own[i] = empty.with_color_hint(outcome.move.color)
                else:
                    own[i] = empty.with_rank_hint(outcome.move.rank)
        break
    return tuple(tuple(s) for s in slots_per_player)


def encoding_dim(config: GameConfig) -> int:
    """Total bit length of enc-v1 for a config (see module docstring)."""
    p, c, r, h = config.players, config.colors, config.ranks, config.hand_size
    card = c * r
    other_hands = (p - 1) * h * card
    flags = p
    board = (config.deck_size - p * h) + c * r + config.max_info_tokens + config.max_lives
    discards = c * sum(config.rank_counts)
    last_action = p + 4 + p + c + r + h + h + card + 2
    know = p * h * (card + c + r)
    return other_hands + flags + board + discards + last_action + know


def encode(observation: Observation, config: GameConfig | None = None) -> EncodedObservation:
    """Encode a default-mode observation as an enc-v1 bit vector."""
    if observation.mode is not ObsMode.DEFAULT:
        raise ValueError("only default-mode observations are encodable")
    cfg = config or observation.config
    p, c, r, h = cfg.players, cfg.colors, cfg.ranks, cfg.hand_size
    card_dim = c * r
    bits = []
    append = bits.append

    # 1. Other hands, one-hot per slot; absent slots all-zero.
    for hand in observation.other_hands:
        for card in hand:
            block = [0] * card_dim
            block[card.color * r + card.rank - 1] = 1
            bits.extend(block)
        bits.extend([0] * ((h - len(hand)) * card_dim))

    # 2. Short-hand flags, viewer-relative.
    hand_sizes = [observation.own_hand_size] + [len(x) for x in observation.other_hands]
    for size in hand_sizes:
        append(1 if size < h else 0)

    # 3. Board: deck thermometer, fireworks, tokens, lives.
    deck_bits = cfg.deck_size - p * h
    bits.extend([1] * observation.deck_size + [0] * (deck_bits - observation.deck_size))
    for top in observation.fireworks:
        bits.extend([1] * top + [0] * (r - top))
    bits.extend([1] * observation.info_tokens
                + [0] * (cfg.max_info_tokens - observation.info_tokens))
    bits.extend([1] * observation.lives + [0] * (cfg.max_lives - observation.lives))

    # 4. Discards: per (color, rank) thermometer of copies discarded.
    counts = {}
    for card in observation.discard_pile:
        counts[card] = counts.get(card, 0) + 1
    for color in range(c):
        for rank in range(1, r + 1):
            total = cfg.rank_counts[rank - 1]
            n = counts.get((color, rank), 0)
            bits.extend([1] * n + [0] * (total - n))

    # 5. Last action (most recent outcome only; zeros when none).
    _encode_last_action(bits, observation, cfg)

    # 6. Knowledge: plausible mask + hinted one-hots, viewer-relative.
    for player_slots in observation.knowledge:
        for k in player_slots:
            for color in range(c):
                if k.color_mask >> color & 1:
                    rank_bits = k.rank_mask
                    for rank in range(r):
                        append(rank_bits >> rank & 1)
                else:
                    bits.extend([0] * r)
            for color in range(c):
                append(1 if k.hinted_color == color else 0)
            for rank in range(1, r + 1):
                append(1 if k.hinted_rank == rank else 0)
        pad = (h - len(player_slots)) * (card_dim + c + r)
        bits.extend([0] * pad)

    dim = encoding_dim(cfg)
    assert len(bits) == dim, f"encoded {len(bits)} bits, expected {dim}"
    return EncodedObservation(bits, dim)


def _encode_last_action(bits: list[int], observation: Observation, cfg: GameConfig) -> None:
    p, c, r, h = cfg.players, cfg.colors, cfg.ranks, cfg.hand_size
    outcome = observation.last_outcomes[-1] if observation.last_outcomes else None
    if outcome is None:
        bits.extend([0] * (p + 4 + p + c + r + h + h + c * r + 2))
        return
    move = outcome.move
    rel_actor = (outcome.actor - observation.viewer) % p
    for i in range(p):
        bits.append(1 if i == rel_actor else 0)
    for kind in range(4):
        bits.append(1 if kind == int(move.kind) else 0)
    if move.is_reveal:
        rel_target = (outcome.actor + move.target_offset - observation.viewer) % p
    else:
        rel_target = None
    for i in range(p):
        bits.append(1 if i == rel_target else 0)
    for color in range(c):
        bits.append(1 if move.color == color else 0)
    for rank in range(1, r + 1):
        bits.append(1 if move.rank == rank else 0)
    for i in range(h):
        bits.append(outcome.touched_slots >> i & 1)
    for i in range(h):
        bits.append(1 if move.slot == i and not move.is_reveal else 0)
    card_block = [0] * (c * r)
    if outcome.revealed_card is not None:
        card = outcome.revealed_card
        card_block[card.color * r + card.rank - 1] = 1
    bits.extend(card_block)
    bits.append(1 if outcome.success else 0)
    bits.append(1 if outcome.info_token_delta > 0 else 0)
