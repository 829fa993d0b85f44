"""Agent contract shared by all policies and by the live-play service."""

from __future__ import annotations

from ..cards import GameConfig
from ..game import Move, MoveOutcome
from ..observation import Observation


class Agent:
    """A seat-holding policy.

    Lifecycle: ``reset()`` wipes all cross-trial memory, then
    ``begin_episode(seat, config)`` announces the seat for one game;
    ``act`` is called on the agent's turns with its censored observation and
    must return a legal move; ``observe_outcome`` is called for every
    resolved move (including the agent's own).  ``ingest_sample_games`` is
    the optional ad-hoc warm-up hook, handed sample replays of the
    teammates' self-play before a trial.
    """

    name = "agent"

    def reset(self) -> None:
        pass

    def begin_episode(self, seat: int, config: GameConfig) -> None:
        self.seat = seat
        self.config = config

    def act(self, observation: Observation) -> Move:
        raise NotImplementedError

    def observe_outcome(self, outcome: MoveOutcome) -> None:
        pass

    def ingest_sample_games(self, replays) -> None:
        pass
