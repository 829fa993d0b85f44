"""Episode-oriented environment API: reset/step with flat actions.

The environment is turn-based single-stream: each step applies the acting
player's move and returns the next-to-act player's observation.  Rewards
are score deltas, so the per-step rewards of an episode always sum to the
final score under the configured scoring mode (a bomb-out is one large
negative step).
"""

from __future__ import annotations

from .cards import GameConfig, ScoringMode
from .game import (
    GameState,
    IllegalMoveError,
    Move,
    apply_move,
    final_score,
    is_terminal,
    legal_moves,
    new_game,
)
from .observation import EncodedObservation, ObsMode, encode, observe


class IllegalActionError(ValueError):
    """An action index whose move violates the rules."""


def action_space(config: GameConfig) -> list[Move]:
    """Fixed flat enumeration of every move the config admits.

    Order: H plays, H discards, (P-1)*C color reveals (target-major), then
    (P-1)*R rank reveals (target-major).  Size = 2H + (P-1)(C+R).
    """
    config.validate()
    moves = [Move.play(s) for s in range(config.hand_size)]
    moves += [Move.discard(s) for s in range(config.hand_size)]
    for off in range(1, config.players):
        moves += [Move.reveal_color(off, c) for c in range(config.colors)]
    for off in range(1, config.players):
        moves += [Move.reveal_rank(off, r) for r in range(1, config.ranks + 1)]
    return moves


class StepBudget:
    """Counts environment turns across all episodes of a training run.

    ``limit`` is the sample-limited regime's cap (100 million turns by
    default); episodes already in flight when the cap is hit run to
    completion, so ``exhausted`` should gate starting new episodes.
    """

    DEFAULT_LIMIT = 100_000_000

    __slots__ = ("limit", "consumed")

    def __init__(self, limit: int | None = DEFAULT_LIMIT):
        self.limit = limit
        self.consumed = 0

    @property
    def exhausted(self) -> bool:
        return self.limit is not None and self.consumed >= self.limit

    def tick(self) -> None:
        self.consumed += 1


class EnvStep:
    """Result of reset/step: the acting player's view plus reward bookkeeping."""

    __slots__ = ("observation", "encoded", "reward", "done", "score",
                 "legal_mask", "player")

    def __init__(self, observation, encoded: EncodedObservation, reward: float,
                 done: bool, score: int, legal_mask: list[int], player: int):
        self.observation = observation
        self.encoded = encoded
        self.reward = reward
        self.done = done
        self.score = score
        self.legal_mask = legal_mask
        self.player = player


def _pass_turn(state: GameState) -> GameState:
    countdown = state.final_round_countdown
    if countdown is not None:
        countdown -= 1
    return GameState(
        config=state.config, deal=state.deal, deck_pos=state.deck_pos,
        hands=state.hands, fireworks=state.fireworks,
        info_tokens=state.info_tokens, lives=state.lives,
        discard_pile=state.discard_pile,
        current_player=(state.current_player + 1) % state.config.players,
        final_round_countdown=countdown, history=state.history,
        knowledge=state.knowledge, seed=state.seed,
    )


class HanabiEnv:
    """One independent, single-threaded environment instance."""

    def __init__(self, config: GameConfig, budget: StepBudget | None = None,
                 forfeit_on_illegal: bool = False):
        config.validate()
        self.config = config
        self.budget = budget
        self.forfeit_on_illegal = forfeit_on_illegal
        self.actions = action_space(config)
        self._action_index = {m: i for i, m in enumerate(self.actions)}
        self.state: GameState | None = None
        self._done = True

    @property
    def num_actions(self) -> int:
        return len(self.actions)

    def move_to_index(self, move: Move) -> int:
        return self._action_index[move]

    def reset(self, seed: int) -> EnvStep:
        self.state = new_game(self.config, seed)
        self._done = False
        return self._make_step(reward=0.0)

    def step(self, action_index: int) -> EnvStep:
        if self.state is None or self._done:
            raise RuntimeError("step called before reset or after episode end")
        if not 0 <= action_index < len(self.actions):
            raise IllegalActionError(f"action index {action_index} out of range")
        move = self.actions[action_index]
        prev_state = self.state
        try:
            next_state, _ = apply_move(prev_state, move)
        except IllegalMoveError as exc:
            if not self.forfeit_on_illegal:
                raise IllegalActionError(str(exc)) from exc
            # Forfeit mode: the illegal submission loses the turn.
            next_state = _pass_turn(prev_state)
        self.state = next_state
        if self.budget is not None:
            self.budget.tick()

        reason = is_terminal(next_state)
        self._done = reason is not None
        if self._done:
            reward = float(final_score(next_state) - prev_state.score)
        else:
            reward = float(next_state.score - prev_state.score)
        return self._make_step(reward=reward)

    def _make_step(self, reward: float) -> EnvStep:
        state = self.state
        done = self._done
        player = state.current_player
        obs = observe(state, player, ObsMode.DEFAULT, include_legal=not done)
        enc = encode(obs)
        mask = [0] * len(self.actions)
        if not done:
            index = self._action_index
            for move in obs.legal:
                mask[index[move]] = 1
        if done:
            score = final_score(state)
        else:
            score = state.score
        return EnvStep(obs, enc, reward, done, score, mask, player)
