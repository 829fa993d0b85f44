"""Cards, game configuration, and the canonical textual card notation."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import NamedTuple

# Canonical color letters, in color-index order.  Used everywhere a card is
# rendered as text (logs, replays, the wire protocol): "Y3" is the yellow 3.
COLOR_CHARS = "RYGWB"

STANDARD_RANK_COUNTS = (3, 2, 2, 2, 1)


class ConfigError(ValueError):
    """Raised for an invalid game configuration."""


class ScoringMode(enum.Enum):
    # Published rule: running out of lives scores zero.
    ZERO_ON_BOMB_OUT = "zero_on_bomb_out"
    # Prior-work comparison mode: score what was played before failing.
    CARDS_PLAYED = "cards_played"


class Card(NamedTuple):
    """A (color, rank) pair.  color is an index in [0, colors); rank in [1, ranks]."""

    color: int
    rank: int

    def text(self) -> str:
        return f"{COLOR_CHARS[self.color]}{self.rank}"

    @classmethod
    def from_text(cls, s: str) -> "Card":
        color = COLOR_CHARS.index(s[0])
        return cls(color, int(s[1:]))


@dataclass(frozen=True)
class GameConfig:
    players: int = 2
    colors: int = 5
    ranks: int = 5
    hand_size: int = 5
    max_info_tokens: int = 8
    max_lives: int = 3
    rank_counts: tuple[int, ...] = STANDARD_RANK_COUNTS
    scoring_mode: ScoringMode = ScoringMode.ZERO_ON_BOMB_OUT

    def validate(self) -> None:
        if not 2 <= self.players <= 5:
            raise ConfigError(f"players must be in [2, 5], got {self.players}")
        if self.colors < 1:
            raise ConfigError("need at least one color")
        if self.ranks < 1:
            raise ConfigError("need at least one rank")
        if len(self.rank_counts) != self.ranks:
            raise ConfigError("rank_counts length must equal ranks")
        if any(n < 1 for n in self.rank_counts):
            raise ConfigError("every rank needs at least one copy")
        if self.hand_size < 1:
            raise ConfigError("hand_size must be positive")
        if self.max_info_tokens < 1 or self.max_lives < 1:
            raise ConfigError("token and life maxima must be positive")
        if self.players * self.hand_size > self.deck_size:
            raise ConfigError("deck too small to deal opening hands")

    @property
    def deck_size(self) -> int:
        return self.colors * sum(self.rank_counts)

    @property
    def max_score(self) -> int:
        return self.colors * self.ranks

    @classmethod
    def standard(cls, players: int, scoring_mode: ScoringMode = ScoringMode.ZERO_ON_BOMB_OUT) -> "GameConfig":
        """Published-rules game: 5 colors, ranks 1-5, hand of 5 (4 at 4-5 players)."""
        cfg = cls(
            players=players,
            hand_size=5 if players <= 3 else 4,
            scoring_mode=scoring_mode,
        )
        cfg.validate()
        return cfg

    @classmethod
    def debug_small(cls, players: int = 2) -> "GameConfig":
        """Two colors, two cards per player, three info tokens, one life."""
        cfg = cls(
            players=players,
            colors=2,
            hand_size=2,
            max_info_tokens=3,
            max_lives=1,
        )
        cfg.validate()
        return cfg

    @classmethod
    def debug_very_small(cls, players: int = 2) -> "GameConfig":
        """Single-color variant of the small debug game."""
        cfg = cls(
            players=players,
            colors=1,
            hand_size=2,
            max_info_tokens=3,
            max_lives=1,
        )
        cfg.validate()
        return cfg

    def to_dict(self) -> dict:
        return {
            "players": self.players,
            "colors": self.colors,
            "ranks": self.ranks,
            "hand_size": self.hand_size,
            "max_info_tokens": self.max_info_tokens,
            "max_lives": self.max_lives,
            "rank_counts": list(self.rank_counts),
            "scoring_mode": self.scoring_mode.value,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "GameConfig":
        cfg = cls(
            players=d["players"],
            colors=d["colors"],
            ranks=d["ranks"],
            hand_size=d["hand_size"],
            max_info_tokens=d["max_info_tokens"],
            max_lives=d["max_lives"],
            rank_counts=tuple(d["rank_counts"]),
            scoring_mode=ScoringMode(d["scoring_mode"]),
        )
        cfg.validate()
        return cfg


def standard_deck(config: GameConfig) -> list[Card]:
    """All cards of the game in canonical (color-major, rank ascending) order."""
    deck = []
    for color in range(config.colors):
        for rank in range(1, config.ranks + 1):
            deck.extend([Card(color, rank)] * config.rank_counts[rank - 1])
    return deck
