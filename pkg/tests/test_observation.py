"""Censored views and the enc-v1 bit layout."""

import pytest

from conftest import drive_random
from hanabi import (
    Card,
    GameConfig,
    Move,
    ObsMode,
    apply_move,
    deal_game,
    encode,
    encoding_dim,
    is_terminal,
    legal_moves,
    new_game,
    observe,
)
from hanabi.observation import ENCODING_VERSION
from hanabi.rng import GameRng


def _cards(text):
    return [Card.from_text(t) for t in text.split()]


def _section_dims(cfg):
    """Independent slot-by-slot accounting of every enc-v1 section."""
    p, c, r, h = cfg.players, cfg.colors, cfg.ranks, cfg.hand_size
    dims = {}
    dims["other_hands"] = sum(c * r for _ in range(p - 1) for _ in range(h))
    dims["flags"] = sum(1 for _ in range(p))
    dims["board"] = ((cfg.deck_size - p * h) + sum(r for _ in range(c))
                     + cfg.max_info_tokens + cfg.max_lives)
    dims["discards"] = sum(cfg.rank_counts[rank - 1]
                           for _ in range(c) for rank in range(1, r + 1))
    dims["last_action"] = p + 4 + p + c + r + h + h + c * r + 2
    dims["knowledge"] = sum(c * r + c + r for _ in range(p) for _ in range(h))
    return dims


@pytest.mark.parametrize("cfg", [
    GameConfig.standard(2), GameConfig.standard(3), GameConfig.standard(5),
    GameConfig.debug_small(), GameConfig.debug_very_small(),
])
def test_encoding_dim_matches_counting_oracle(cfg):
    assert encoding_dim(cfg) == sum(_section_dims(cfg).values())
    # length-measurement oracle
    obs = observe(new_game(cfg, 3), 0)
    assert len(encode(obs).bits) == encoding_dim(cfg)


def test_encoding_dim_standard_two_player():
    assert encoding_dim(GameConfig.standard(2)) == 658


def test_observe_censors_own_hand():
    cfg = GameConfig.standard(4)
    state = new_game(cfg, 44)
    for viewer in range(4):
        obs = observe(state, viewer)
        assert obs.own_hand_size == 4
        seen = [c for hand in obs.other_hands for c in hand]
        expected = [c for p in range(4) if p != viewer for c in state.hands[p]]
        assert sorted(seen) == sorted(expected)
        assert obs.other_hands[0] == state.hands[(viewer + 1) % 4]


def test_knowledge_section_is_common():
    state = new_game(GameConfig.standard(3), 5)
    state, _ = apply_move(state, Move.reveal_rank(1, state.hands[1][0].rank))
    views = [observe(state, v) for v in range(3)]
    for v, obs in enumerate(views):
        absolute = [obs.knowledge[(p - v) % 3] for p in range(3)]
        assert absolute == [views[0].knowledge[(p - 0) % 3] for p in range(3)]


def test_minimal_mode():
    cfg = GameConfig.standard(2)
    state = new_game(cfg, 9)
    obs = observe(state, 1, ObsMode.MINIMAL)
    full_color = (1 << cfg.colors) - 1
    for k in obs.knowledge[0]:
        assert k.color_mask == full_color and k.hinted_color is None

    rank = state.hands[1][0].rank
    state, out = apply_move(state, Move.reveal_rank(1, rank))
    obs = observe(state, 1, ObsMode.MINIMAL)
    for i, k in enumerate(obs.knowledge[0]):
        if out.touched_slots >> i & 1:
            assert k.hinted_rank == rank
        else:
            # minimal mode: no accumulated negative information
            assert k.rank_mask == (1 << cfg.ranks) - 1
    with pytest.raises(ValueError):
        encode(obs)


def test_fresh_game_board_sections():
    cfg = GameConfig.standard(2)
    obs = observe(new_game(cfg, 17), 0)
    bits = encode(obs).bits
    d = _section_dims(cfg)
    start = d["other_hands"] + d["flags"]
    deck_bits = cfg.deck_size - cfg.players * cfg.hand_size
    assert bits[start:start + deck_bits] == [1] * 40
    fireworks = bits[start + deck_bits:start + deck_bits + 25]
    assert fireworks == [0] * 25
    tokens = bits[start + deck_bits + 25:start + deck_bits + 25 + 8]
    assert tokens == [1] * 8
    lives = bits[start + deck_bits + 33:start + deck_bits + 36]
    assert lives == [1] * 3


def test_card_one_hot_index():
    # Y3 sits at index 1*5+2 = 7 of its 25-bit block (color order RYGWB).
    cfg = GameConfig.standard(2)
    deck = _cards("G5 Y3 G1 W1 G2 W2 G3 W3 G4 W4") + _cards("B1") * 40
    state = deal_game(cfg, deck)
    bits = encode(observe(state, 0)).bits
    block = bits[0:25]  # partner's slot-0 card
    assert block[7] == 1
    assert sum(block) == 1


def test_encode_deterministic():
    state = new_game(GameConfig.standard(3), 77)
    obs = observe(state, 2)
    assert encode(obs) == encode(obs)
    assert encode(obs).to_bytes() == encode(obs).to_bytes()


def test_no_leakage_when_own_cards_swapped():
    # Swapping two of the viewer's own cards (no hints given) must leave
    # the encoded observation bit-identical.
    cfg = GameConfig.standard(2)
    deck = _cards("R1 Y1 G3 Y2 W4 Y3 B2 Y4 R5 Y5") + _cards("G1") * 40
    swapped = _cards("G3 Y1 R1 Y2 W4 Y3 B2 Y4 R5 Y5") + _cards("G1") * 40
    a = encode(observe(deal_game(cfg, deck), 0))
    b = encode(observe(deal_game(cfg, swapped), 0))
    assert a == b

    # With a rank hint in play, swapping two own cards of the hinted rank
    # keeps the history consistent and still changes nothing.
    deck2 = _cards("R2 Y1 G2 Y2 W4 Y3 B2 Y4 R5 Y5") + _cards("G1") * 40
    swap2 = _cards("G2 Y1 R2 Y2 W4 Y3 B2 Y4 R5 Y5") + _cards("G1") * 40
    states = []
    for d in (deck2, swap2):
        s = deal_game(cfg, d)
        s, _ = apply_move(s, Move.reveal_rank(1, 1))   # pass turn to P1
        s, _ = apply_move(s, Move.reveal_rank(1, 2))   # hint P0's rank-2 cards
        states.append(s)
    enc = [encode(observe(s, 0)) for s in states]
    assert enc[0] == enc[1]


def test_encoding_injective_over_fuzzed_observations():
    seen = {}
    collisions = 0
    total = 0
    for players in (2, 3):
        cfg = GameConfig.standard(players)
        for seed in range(100):
            def grab(state):
                nonlocal collisions, total
                for v in range(players):
                    enc = encode(observe(state, v))
                    key = enc.to_bytes()
                    total += 1
                    prev = seen.get(key)
                    if prev is not None and prev != enc.bits:
                        collisions += 1
                    seen[key] = enc.bits

            drive_random(cfg, seed, on_state=grab)
    assert total > 5000
    assert collisions == 0


def test_last_outcomes_default_window():
    cfg = GameConfig.standard(3)
    state = new_game(cfg, 2)
    rng = GameRng(0)
    for _ in range(7):
        moves = legal_moves(state)
        state, _ = apply_move(state, moves[rng.randrange(len(moves))])
    viewer = 1
    obs = observe(state, viewer)
    # everything after the viewer's most recent move
    idx = max(i for i, o in enumerate(state.history) if o.actor == viewer)
    assert obs.last_outcomes == state.history[idx + 1:]


def test_version_tag():
    assert ENCODING_VERSION == "enc-v1"
