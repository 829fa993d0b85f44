"""Shared drivers and independent oracles for the test suite."""

from __future__ import annotations

import itertools

from hanabi import (
    Card,
    GameConfig,
    GameState,
    apply_move,
    is_terminal,
    legal_moves,
    new_game,
    standard_deck,
)
from hanabi.rng import GameRng


def drive_random(config: GameConfig, seed: int, on_state=None,
                 max_turns: int = 10_000) -> GameState:
    """Play one full game choosing uniformly random legal moves."""
    rng = GameRng(seed ^ 0xDEADBEEF)
    state = new_game(config, seed)
    turns = 0
    while is_terminal(state) is None:
        if on_state is not None:
            on_state(state)
        moves = legal_moves(state)
        state, _ = apply_move(state, moves[rng.randrange(len(moves))])
        turns += 1
        assert turns <= max_turns, "game failed to terminate"
    return state


def check_invariants(state: GameState) -> None:
    """Card conservation, token/life bounds, firework ranges."""
    cfg = state.config
    assert 0 <= state.info_tokens <= cfg.max_info_tokens
    assert 0 <= state.lives <= cfg.max_lives
    assert all(0 <= f <= cfg.ranks for f in state.fireworks)
    played = [Card(c, r)
              for c in range(cfg.colors)
              for r in range(1, state.fireworks[c] + 1)]
    everything = (list(state.deck) + list(state.discard_pile) + played
                  + [card for hand in state.hands for card in hand])
    assert sorted(everything) == sorted(standard_deck(cfg)), "card conservation"


def brute_force_plausible(config: GameConfig, slots, visible_cards):
    """Enumerate every assignment of unseen cards to the hidden slots.

    Independent oracle for the exact plausible-set computation: a card is
    plausible for a slot iff it appears there in some full assignment
    consistent with every slot's hint masks.
    """
    pool = standard_deck(config)
    for card in visible_cards:
        pool.remove(card)
    n = len(slots)
    results = [set() for _ in range(n)]
    for assignment in set(itertools.permutations(pool, n)):
        if all(k.plausible(card) for k, card in zip(slots, assignment)):
            for i, card in enumerate(assignment):
                results[i].add(card)
    return results
