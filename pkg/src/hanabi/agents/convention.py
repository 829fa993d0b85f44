"""Convention agent: hints mean "play", newest cards first.

A small human-style convention set: a hint to a player marks its newest
touched card as a play candidate; discards prefer provably useless cards,
then the oldest card never touched by a hint.  Primarily tuned for two
players; with more seats it prefers hinting the next player in turn order.
"""

from __future__ import annotations

from ..game import Move, MoveKind, MoveOutcome
from ..observation import Observation
from .base import Agent


class ConventionAgent(Agent):
    name = "convention"

    def __init__(self):
        self.seat = None
        self.config = None
        self._play_intent: list[bool] = []
        self._protected: list[bool] = []

    def reset(self) -> None:
        self._play_intent = []
        self._protected = []

    def begin_episode(self, seat: int, config) -> None:
        super().begin_episode(seat, config)
        self._play_intent = [False] * config.hand_size
        self._protected = [False] * config.hand_size

    # -- bookkeeping ------------------------------------------------------

    def observe_outcome(self, outcome: MoveOutcome) -> None:
        if self.config is None:
            return
        p = self.config.players
        move = outcome.move
        if move.is_reveal:
            target = (outcome.actor + move.target_offset) % p
            if target != self.seat:
                return
            touched = [i for i in range(len(self._play_intent))
                       if outcome.touched_slots >> i & 1]
            for i in touched:
                self._protected[i] = True
            if touched:
                # Convention: the newest touched card is the play signal.
                self._play_intent[max(touched)] = True
        elif outcome.actor == self.seat:
            slot = move.slot
            del self._play_intent[slot]
            del self._protected[slot]
            if outcome.drawn:
                self._play_intent.append(False)
                self._protected.append(False)

    # -- decision ---------------------------------------------------------

    def act(self, obs: Observation) -> Move:
        move = (self._try_play(obs)
                or self._try_hint_playable(obs)
                or self._try_discard(obs)
                or self._fallback_hint(obs))
        if move is None:
            move = obs.legal[0]
        return move

    def _playability(self, slot: int, obs: Observation) -> str:
        """'proven', 'possible', or 'no' from the slot's hint masks."""
        cards = obs.knowledge[0][slot].possible_cards(self.config)
        playable = [c for c in cards if obs.fireworks[c.color] == c.rank - 1]
        if not playable:
            return "no"
        if len(playable) == len(cards):
            return "proven"
        return "possible"

    def _try_play(self, obs: Observation) -> Move | None:
        # Newest first: provably playable beats hint-signalled.
        for slot in range(obs.own_hand_size - 1, -1, -1):
            if self._playability(slot, obs) == "proven":
                return Move.play(slot)
        for slot in range(obs.own_hand_size - 1, -1, -1):
            if not self._play_intent[slot]:
                continue
            if self._playability(slot, obs) == "possible":
                return Move.play(slot)
            # The signal went stale (or was never about playability).
            self._play_intent[slot] = False
        return None

    def _try_hint_playable(self, obs: Observation) -> Move | None:
        if obs.info_tokens < 1:
            return None
        cfg = self.config
        for off in range(1, cfg.players):
            hand = obs.other_hands[off - 1]
            their_know = obs.knowledge[off]
            for slot in range(len(hand) - 1, -1, -1):
                card = hand[slot]
                if obs.fireworks[card.color] != card.rank - 1:
                    continue
                k = their_know[slot]
                if k.hinted_color is not None or k.hinted_rank is not None:
                    continue
                move = self._choose_hint_value(off, slot, hand)
                if move is not None:
                    return move
        return None

    def _choose_hint_value(self, off: int, slot: int, hand) -> Move | None:
        """Pick color vs rank so the target is the newest touched card."""
        card = hand[slot]
        color_touch = [i for i, c in enumerate(hand) if c.color == card.color]
        rank_touch = [i for i, c in enumerate(hand) if c.rank == card.rank]
        options = []
        if max(rank_touch) == slot:
            options.append((len(rank_touch), 0, Move.reveal_rank(off, card.rank)))
        if max(color_touch) == slot:
            options.append((len(color_touch), 1, Move.reveal_color(off, card.color)))
        if not options:
            return None
        # Fewest touched cards wins; ties prefer rank.
        options.sort()
        return options[0][2]

    def _try_discard(self, obs: Observation) -> Move | None:
        if obs.info_tokens >= self.config.max_info_tokens:
            return None
        if obs.own_hand_size == 0:
            return None
        for slot in range(obs.own_hand_size):
            if self._provably_useless(slot, obs):
                return Move.discard(slot)
        for slot in range(obs.own_hand_size):
            if not self._protected[slot]:
                return Move.discard(slot)
        return Move.discard(0)

    def _provably_useless(self, slot: int, obs: Observation) -> bool:
        from .hat import unreachable_rank  # same public dead-card rule

        counts = {}
        for card in obs.discard_pile:
            counts[card] = counts.get(card, 0) + 1
        cards = obs.knowledge[0][slot].possible_cards(self.config)
        return bool(cards) and all(
            unreachable_rank(c, r, obs.fireworks, counts, self.config)
            for c, r in cards
        )

    def _fallback_hint(self, obs: Observation) -> Move | None:
        if obs.info_tokens < 1:
            return None
        for off in range(1, self.config.players):
            hand = obs.other_hands[off - 1]
            if hand:
                return Move.reveal_rank(off, hand[-1].rank)
        return None
