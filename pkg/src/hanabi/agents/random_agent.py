"""Uniform-random legal play; the fuzzing baseline."""

from __future__ import annotations

from ..game import Move
from ..observation import Observation
from ..rng import GameRng
from .base import Agent


class RandomAgent(Agent):
    """Picks uniformly among legal moves from a seeded stream.

    ``reset`` restores the stream to its seed, so a trial's behaviour
    depends only on (agent seed, game seed), never on trial order.
    """

    name = "random"

    def __init__(self, seed: int = 0):
        self.base_seed = seed
        self.rng = GameRng(seed)

    def reset(self) -> None:
        self.rng = GameRng(self.base_seed)

    def act(self, observation: Observation) -> Move:
        return self.rng.choice(observation.legal)
