"""Deterministic Hanabi: engine, environment, agents, evaluation, service."""

from .cards import Card, ConfigError, GameConfig, ScoringMode, standard_deck
from .game import (
    GameState,
    IllegalMoveError,
    Move,
    MoveKind,
    MoveOutcome,
    TerminalReason,
    apply_move,
    deal_game,
    final_score,
    is_terminal,
    legal_moves,
    new_game,
)
from .observation import ObsMode, Observation, encode, encoding_dim, observe
from .env import HanabiEnv, StepBudget, action_space

__all__ = [
    "Card", "ConfigError", "GameConfig", "ScoringMode", "standard_deck",
    "GameState", "IllegalMoveError", "Move", "MoveKind", "MoveOutcome",
    "TerminalReason", "apply_move", "deal_game", "final_score", "is_terminal",
    "legal_moves", "new_game",
    "ObsMode", "Observation", "encode", "encoding_dim", "observe",
    "HanabiEnv", "StepBudget", "action_space",
]

__version__ = "0.1.0"
