"""Hat-coding recommendation agent.

When hinting, the agent computes a recommended action for every other
player from that player's visible hand, sums the recommendation indices,
and encodes the sum modulo the number of hint classes as the choice of
(hint target, color-vs-rank).  Each receiver reconstructs the sum for
everyone it can see and recovers its own recommendation by modular
subtraction.

Hint classes: h = 2 * (target_offset - 1) + (0 for a rank hint, 1 for a
color hint), giving 2 * (players - 1) classes.  Recommendation indices:
play slot s -> s for s below play_range = min(hand_size, classes - 1),
discard slot s -> play_range + s.  Only indices below the class count are
usable, so both ranges are clipped for small player counts; the slot-0
discard fallback always fits.

Recommendations are a deterministic function of the recommended player's
own hand plus public state only (fireworks and discards), never of other
hands: a receiver cannot see its own hand, so any rule depending on it
would make the modular sum unreconstructable.

Receivers decode lazily on their turn: the current observation is rewound
through the outcomes that followed the hint (play/discard identities are
public once resolved), recovering every visible hand and the board exactly
as the hinter saw them.
"""

from __future__ import annotations

from ..cards import Card, GameConfig
from ..game import Move, MoveKind
from ..observation import Observation
from .base import Agent


class HatCode:
    """The modular-arithmetic mapping between hint moves and class indices."""

    def __init__(self, config: GameConfig):
        if config.players < 3:
            raise ValueError("hat coding needs at least 3 players "
                             "(2 hint classes cannot carry a recommendation)")
        self.config = config
        self.num_classes = 2 * (config.players - 1)
        self.hand_size = config.hand_size
        # Play recommendations cover slots [0, play_range); discard slot s
        # maps to play_range + s.  Capping play_range below the class count
        # keeps the slot-0 discard fallback encodable even when hands are
        # larger than the class space (e.g. 3 players, hand of 5).
        self.play_range = min(config.hand_size, self.num_classes - 1)

    def class_of(self, move: Move) -> int:
        """Class index of a reveal move (offset relative to its actor)."""
        if not move.is_reveal:
            raise ValueError("only reveal moves carry a hat class")
        kind_bit = 0 if move.kind is MoveKind.REVEAL_RANK else 1
        return 2 * (move.target_offset - 1) + kind_bit

    def class_target(self, h: int) -> tuple[int, MoveKind]:
        """(target_offset, reveal kind) encoding class ``h``."""
        kind = MoveKind.REVEAL_RANK if h % 2 == 0 else MoveKind.REVEAL_COLOR
        return h // 2 + 1, kind

    def rec_is_play(self, rec: int) -> bool:
        return rec < self.play_range

    def encode_sum(self, recs) -> int:
        return sum(recs) % self.num_classes

    def decode_own(self, total: int, other_recs) -> int:
        return (total - sum(other_recs)) % self.num_classes


def unreachable_rank(color: int, rank: int, fireworks, discard_counts,
                     config: GameConfig) -> bool:
    """True if (color, rank) can never be played from here."""
    if rank <= fireworks[color]:
        return True
    for below in range(fireworks[color] + 1, rank):
        if discard_counts.get((color, below), 0) >= config.rank_counts[below - 1]:
            return True
    return False


def hat_recommendation(hand, fireworks, discard_counts, config: GameConfig,
                       num_classes: int) -> int:
    """Deterministic recommendation index for one visible hand.

    Priority: play the lowest-rank immediately playable card (lowest slot on
    ties); discard a dead card; discard a card duplicated within the hand;
    discard slot 0.  Play indices cover slots [0, play_range); discard slot
    s encodes as play_range + s, so every emitted index is below
    ``num_classes``.
    """
    play_range = min(config.hand_size, num_classes - 1)
    max_discard_slot = num_classes - play_range  # slots [0, this) encodable

    best = None  # (rank, slot)
    for slot, card in enumerate(hand):
        if slot >= play_range:
            break
        if fireworks[card.color] == card.rank - 1:
            if best is None or (card.rank, slot) < best:
                best = (card.rank, slot)
    if best is not None:
        return best[1]

    for slot, card in enumerate(hand):
        if slot >= max_discard_slot:
            break
        if unreachable_rank(card.color, card.rank, fireworks, discard_counts, config):
            return play_range + slot

    seen: dict[Card, int] = {}
    for card in hand:
        seen[card] = seen.get(card, 0) + 1
    for slot, card in enumerate(hand):
        if slot >= max_discard_slot:
            break
        if seen[card] > 1:
            return play_range + slot

    return play_range + 0


def _most_common_hint_value(hand, kind: MoveKind) -> int:
    """Hint content for a class: most frequent value, ties to the lowest."""
    counts: dict[int, int] = {}
    for card in hand:
        v = card.rank if kind is MoveKind.REVEAL_RANK else card.color
        counts[v] = counts.get(v, 0) + 1
    return max(counts, key=lambda v: (counts[v], -v))


class HatAgent(Agent):
    """Executes decoded recommendations; hints the joint sum otherwise."""

    name = "hat"

    def __init__(self):
        self.seat = None
        self.config = None
        self.code = None

    def begin_episode(self, seat: int, config: GameConfig) -> None:
        super().begin_episode(seat, config)
        self.code = HatCode(config)

    def act(self, observation: Observation) -> Move:
        obs = observation
        cfg = self.config
        decoded = self._decode_recommendation(obs)

        # A play recommendation is trusted while fresh: every play since the
        # hint may have changed what is playable, so after one intervening
        # play it is only attempted with a life to spare, and after two it
        # is dropped in favour of a fresh hint.
        if decoded is not None:
            rec, plays_since = decoded
            move = self._execute(rec, plays_since, obs)
            if move is not None:
                return move
        if obs.info_tokens >= 1:
            move = self._encode_hint(obs)
            if move is not None:
                return move
        if decoded is not None:
            move = self._execute_discard(decoded[0], obs)
            if move is not None:
                return move
        if obs.info_tokens < cfg.max_info_tokens and obs.own_hand_size > 0:
            return Move.discard(0)
        if obs.own_hand_size > 0:
            return Move.play(0)
        return obs.legal[0]

    def _execute(self, rec: int, plays_since: int, obs: Observation) -> Move | None:
        code = self.code
        if not code.rec_is_play(rec):
            return None
        slot = rec
        if slot >= obs.own_hand_size:
            return None
        if self._provably_playable(slot, obs):
            return Move.play(slot)
        if plays_since == 0 and obs.lives >= 2:
            return Move.play(slot)
        if plays_since == 1 and obs.lives >= 3:
            return Move.play(slot)
        return None

    def _execute_discard(self, rec: int, obs: Observation) -> Move | None:
        code = self.code
        if code.rec_is_play(rec):
            return None
        slot = rec - code.play_range
        if slot >= obs.own_hand_size:
            return None
        if obs.info_tokens < self.config.max_info_tokens:
            return Move.discard(slot)
        return None

    def _provably_playable(self, slot: int, obs: Observation) -> bool:
        k = obs.knowledge[0][slot]
        cards = k.possible_cards(self.config)
        return bool(cards) and all(
            obs.fireworks[c] == r - 1 for c, r in cards
        )

    # -- encoding ---------------------------------------------------------

    def _encode_hint(self, obs: Observation) -> Move | None:
        cfg = self.config
        code = self.code
        fireworks = obs.fireworks
        discard_counts = _discard_counts(obs.discard_pile)
        recs = [
            hat_recommendation(obs.other_hands[off - 1], fireworks,
                               discard_counts, cfg, code.num_classes)
            for off in range(1, cfg.players)
        ]
        h = code.encode_sum(recs)
        target_offset, kind = code.class_target(h)
        target_hand = obs.other_hands[target_offset - 1]
        if not target_hand:
            # Degenerate final-round case: the class's target is out of
            # cards, so no hint of that class exists.  Hinting a different
            # class would be mis-decoded, so fall back to a quiet action.
            return None
        value = _most_common_hint_value(target_hand, kind)
        if kind is MoveKind.REVEAL_RANK:
            return Move.reveal_rank(target_offset, value)
        return Move.reveal_color(target_offset, value)

    # -- decoding ---------------------------------------------------------

    def _decode_recommendation(self, obs: Observation) -> tuple[int, int] | None:
        """(own recommendation, plays since the hint), or None."""
        outcomes = obs.last_outcomes
        hint_idx = None
        for i in range(len(outcomes) - 1, -1, -1):
            if outcomes[i].move.is_reveal:
                hint_idx = i
                break
        if hint_idx is None:
            return None
        hint = outcomes[hint_idx]
        if hint.actor == self.seat:
            return None
        plays_since = sum(1 for o in outcomes[hint_idx + 1:]
                          if o.move.kind is MoveKind.PLAY)
        cfg = self.config
        code = self.code
        p = cfg.players

        # Rewind hands/board to the moment the hint was given.
        hands = {}
        for off in range(1, p):
            hands[(self.seat + off) % p] = list(obs.other_hands[off - 1])
        fireworks = list(obs.fireworks)
        discard_counts = _discard_counts(obs.discard_pile)
        for o in reversed(outcomes[hint_idx + 1:]):
            move = o.move
            if move.is_reveal:
                continue
            hand = hands[o.actor]
            if o.drawn:
                hand.pop()
            hand.insert(move.slot, o.revealed_card)
            card = o.revealed_card
            if move.kind is MoveKind.PLAY and o.success:
                fireworks[card.color] = card.rank - 1
            else:
                discard_counts[card] -= 1

        h = code.class_of(hint.move)
        other_recs = [
            hat_recommendation(hands[j], fireworks, discard_counts, cfg,
                               code.num_classes)
            for j in hands
            if j != hint.actor
        ]
        return code.decode_own(h, other_recs), plays_since


def _discard_counts(discard_pile) -> dict[Card, int]:
    counts: dict[Card, int] = {}
    for card in discard_pile:
        counts[card] = counts.get(card, 0) + 1
    return counts
