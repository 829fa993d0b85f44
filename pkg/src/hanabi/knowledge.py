"""Per-slot hint knowledge: positive and negative information from reveals.

A reveal touches every matching card in the target hand.  Touched slots
learn the hinted value exactly; untouched slots learn they do not have it.
Knowledge stores only these hint-derived constraints.  Card-counting
inference (removing cards visible elsewhere, including cross-slot
feasibility) is the separate ``common_knowledge_filter`` helper used by
agents and tests, so the default observation stays purely hint-based.
"""

from __future__ import annotations

from .cards import Card, GameConfig


class CardKnowledge:
    """Hint knowledge for one hand slot.

    Plausible sets are bitmasks: bit c of ``color_mask`` means color c is
    still possible, bit (r-1) of ``rank_mask`` means rank r is.  Instances
    are treated as immutable; updates produce new instances.
    """

    __slots__ = ("color_mask", "rank_mask", "hinted_color", "hinted_rank")

    def __init__(self, color_mask: int, rank_mask: int,
                 hinted_color: int | None = None, hinted_rank: int | None = None):
        self.color_mask = color_mask
        self.rank_mask = rank_mask
        self.hinted_color = hinted_color
        self.hinted_rank = hinted_rank

    def color_plausible(self, color: int) -> bool:
        return bool(self.color_mask >> color & 1)

    def rank_plausible(self, rank: int) -> bool:
        return bool(self.rank_mask >> (rank - 1) & 1)

    def plausible(self, card: Card) -> bool:
        return self.color_plausible(card.color) and self.rank_plausible(card.rank)

    def with_color_hint(self, color: int) -> "CardKnowledge":
        return CardKnowledge(1 << color, self.rank_mask, color, self.hinted_rank)

    def without_color(self, color: int) -> "CardKnowledge":
        mask = self.color_mask & ~(1 << color)
        if mask == self.color_mask:
            return self
        return CardKnowledge(mask, self.rank_mask, self.hinted_color, self.hinted_rank)

    def with_rank_hint(self, rank: int) -> "CardKnowledge":
        return CardKnowledge(self.color_mask, 1 << (rank - 1), self.hinted_color, rank)

    def without_rank(self, rank: int) -> "CardKnowledge":
        mask = self.rank_mask & ~(1 << (rank - 1))
        if mask == self.rank_mask:
            return self
        return CardKnowledge(self.color_mask, mask, self.hinted_color, self.hinted_rank)

    def possible_cards(self, config: GameConfig) -> list[Card]:
        return [
            Card(c, r)
            for c in range(config.colors)
            if self.color_mask >> c & 1
            for r in range(1, config.ranks + 1)
            if self.rank_mask >> (r - 1) & 1
        ]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, CardKnowledge)
            and self.color_mask == other.color_mask
            and self.rank_mask == other.rank_mask
            and self.hinted_color == other.hinted_color
            and self.hinted_rank == other.hinted_rank
        )

    def __repr__(self) -> str:
        return (f"CardKnowledge(colors={self.color_mask:b}, ranks={self.rank_mask:b}, "
                f"hinted_color={self.hinted_color}, hinted_rank={self.hinted_rank})")


_FULL_CACHE: dict[tuple[int, int], CardKnowledge] = {}


def full_knowledge(config: GameConfig) -> CardKnowledge:
    """The all-plausible knowledge of a freshly drawn card (shared instance)."""
    key = (config.colors, config.ranks)
    k = _FULL_CACHE.get(key)
    if k is None:
        k = CardKnowledge((1 << config.colors) - 1, (1 << config.ranks) - 1)
        _FULL_CACHE[key] = k
    return k


def apply_color_reveal(slots: tuple[CardKnowledge, ...], color: int,
                       touched: int) -> tuple[CardKnowledge, ...]:
    """Knowledge after a color reveal with the given touched-slot bitmask."""
    return tuple(
        k.with_color_hint(color) if touched >> i & 1 else k.without_color(color)
        for i, k in enumerate(slots)
    )


def apply_rank_reveal(slots: tuple[CardKnowledge, ...], rank: int,
                      touched: int) -> tuple[CardKnowledge, ...]:
    return tuple(
        k.with_rank_hint(rank) if touched >> i & 1 else k.without_rank(rank)
        for i, k in enumerate(slots)
    )


def update_knowledge(slots, outcome, config: GameConfig):
    """Apply one resolved move outcome to a hand's knowledge list.

    For reveals targeting this hand, touched slots gain the hinted value and
    untouched slots lose it.  For a play/discard by this hand's owner the
    slot entry is removed and, if a card was drawn, a fresh all-plausible
    entry is appended.
    """
    from .game import MoveKind  # local import to avoid a cycle

    slots = tuple(slots)
    kind = outcome.move.kind
    if kind is MoveKind.REVEAL_COLOR:
        return list(apply_color_reveal(slots, outcome.move.color, outcome.touched_slots))
    if kind is MoveKind.REVEAL_RANK:
        return list(apply_rank_reveal(slots, outcome.move.rank, outcome.touched_slots))
    out = [k for i, k in enumerate(slots) if i != outcome.move.slot]
    if outcome.drawn:
        out.append(full_knowledge(config))
    return out


def unseen_pool(config: GameConfig, visible_cards) -> dict[Card, int]:
    """Multiset of cards not visible to a viewer (deck plus own hand)."""
    pool: dict[Card, int] = {}
    for color in range(config.colors):
        for rank in range(1, config.ranks + 1):
            pool[Card(color, rank)] = config.rank_counts[rank - 1]
    for card in visible_cards:
        pool[card] -= 1
        if pool[card] < 0:
            raise ValueError(f"more copies of {card.text()} visible than exist")
    return pool


def common_knowledge_filter(config: GameConfig, slots: list[CardKnowledge],
                            visible_cards) -> list[set[Card]]:
    """Exact plausible sets for a hidden hand: hint masks plus card counting.

    A card is plausible for a slot iff some assignment of the unseen pool to
    all hidden slots is consistent with every slot's hint mask.  This is the
    full cross-slot feasibility check (a matching problem), not just a
    per-slot count filter, so it agrees with brute-force deal enumeration.
    """
    pool = unseen_pool(config, visible_cards)
    candidates = [
        [c for c in k.possible_cards(config) if pool.get(c, 0) > 0]
        for k in slots
    ]
    n = len(slots)

    def feasible(assign_slot: int, assign_card: Card) -> bool:
        counts = dict(pool)
        counts[assign_card] -= 1
        order = [i for i in range(n) if i != assign_slot]
        # Backtracking over at most hand_size slots; candidate lists are
        # small, so this is fast enough for test and agent use.
        def rec(idx: int) -> bool:
            if idx == len(order):
                return True
            s = order[idx]
            for card in candidates[s]:
                if counts[card] > 0:
                    counts[card] -= 1
                    if rec(idx + 1):
                        counts[card] += 1
                        return True
                    counts[card] += 1
            return False

        return rec(0)

    result: list[set[Card]] = []
    for s in range(n):
        ok = {c for c in candidates[s] if feasible(s, c)}
        if not ok and candidates[s]:
            raise ValueError("inconsistent knowledge: no feasible assignment")
        result.append(ok)
    return result
