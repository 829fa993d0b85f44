"""Self-play and ad-hoc evaluation protocols, statistics, and analysis.

Reports are a pure function of (agent specs, config, seeds): agents are
reset between games, game seeds are derived from the base seed, and
crosstable cells get disjoint seed ranges so no deck is shared between
cells.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

from .agents import Agent, create_agent
from .cards import GameConfig
from .game import GameState, apply_move, final_score, is_terminal, new_game
from .observation import ObsMode, observe
from .replay import Replay, record
from .rng import GameRng, splitmix64
from .env import HanabiEnv, StepBudget


def play_game(config: GameConfig, seed: int, agents: list[Agent],
              agent_specs: list[str] | None = None) -> Replay:
    """Drive one full game; agents must already be reset."""
    if len(agents) != config.players:
        raise ValueError("need exactly one agent per seat")
    state = new_game(config, seed)
    for seat, agent in enumerate(agents):
        agent.begin_episode(seat, config)
    while is_terminal(state) is None:
        seat = state.current_player
        obs = observe(state, seat, ObsMode.DEFAULT)
        move = agents[seat].act(obs)
        state, outcome = apply_move(state, move)
        for agent in agents:
            agent.observe_outcome(outcome)
    return record(state, agent_specs)


def _mean_stderr(scores) -> tuple[float, float]:
    n = len(scores)
    if n == 0:
        raise ValueError("no scores to summarize")
    mean = sum(scores) / n
    if n == 1:
        return mean, 0.0
    var = sum((s - mean) ** 2 for s in scores) / (n - 1)
    return mean, math.sqrt(var) / math.sqrt(n)


def summarize(scores, max_score: int) -> tuple[float, float, float]:
    """(mean, standard error of the mean, perfect-game percentage).

    Standard error is the sample standard deviation over sqrt(n); a
    perfect game scores ``max_score``.
    """
    mean, stderr = _mean_stderr(scores)
    perfect = 100.0 * sum(1 for s in scores if s == max_score) / len(scores)
    return mean, stderr, perfect


@dataclass
class SelfPlayReport:
    config: GameConfig
    agent_spec: str
    n_games: int
    base_seed: int
    mean: float
    std_error: float
    perfect_pct: float
    histogram: dict[int, int]
    scores: list[int]
    wall_time: float

    def to_dict(self) -> dict:
        return {
            "agent": self.agent_spec,
            "config": self.config.to_dict(),
            "n_games": self.n_games,
            "base_seed": self.base_seed,
            "mean": self.mean,
            "std_error": self.std_error,
            "perfect_pct": self.perfect_pct,
            "histogram": {str(k): v for k, v in sorted(self.histogram.items())},
            "wall_time_s": self.wall_time,
        }


def run_selfplay(agent_spec: str, config: GameConfig, n_games: int,
                 base_seed: int = 0, keep_replays: bool = False):
    """Self-play protocol: one policy in every seat, seeds base..base+n-1."""
    if n_games < 1:
        raise ValueError("n_games must be at least 1")
    agents = [create_agent(agent_spec) for _ in range(config.players)]
    scores: list[int] = []
    replays: list[Replay] = []
    start = time.perf_counter()
    for i in range(n_games):
        for agent in agents:
            agent.reset()
        replay = play_game(config, base_seed + i, agents,
                           [agent_spec] * config.players)
        scores.append(replay.final_score)
        if keep_replays:
            replays.append(replay)
    wall = time.perf_counter() - start
    histogram: dict[int, int] = {}
    for s in scores:
        histogram[s] = histogram.get(s, 0) + 1
    mean, stderr, perfect = summarize(scores, config.max_score)
    report = SelfPlayReport(
        config=config, agent_spec=agent_spec, n_games=n_games,
        base_seed=base_seed, mean=mean, std_error=stderr,
        perfect_pct=perfect, histogram=histogram, scores=scores,
        wall_time=wall,
    )
    if keep_replays:
        return report, replays
    return report


@dataclass
class AdHocLog:
    """Accounting for one crosstable cell, for protocol audits."""

    row: str
    col: str
    trials: int = 0
    resets: int = 0
    sample_set_ids: set[int] = field(default_factory=set)
    seats: list[int] = field(default_factory=list)


@dataclass
class CrossTable:
    agent_specs: list[str]
    players: int
    trials_per_pair: int
    means: list[list[float]]
    std_errors: list[list[float]]
    logs: list[list[AdHocLog]]

    def cell(self, row: int, col: int) -> tuple[float, float]:
        return self.means[row][col], self.std_errors[row][col]

    def to_dict(self) -> dict:
        return {
            "agents": self.agent_specs,
            "players": self.players,
            "trials_per_pair": self.trials_per_pair,
            "means": self.means,
            "std_errors": self.std_errors,
        }

    def to_csv(self) -> str:
        lines = ["agent," + ",".join(self.agent_specs)]
        for i, spec in enumerate(self.agent_specs):
            cells = ",".join(
                f"{self.means[i][j]:.3f}±{self.std_errors[i][j]:.3f}"
                for j in range(len(self.agent_specs)))
            lines.append(f"{spec},{cells}")
        return "\n".join(lines) + "\n"


def _derive_seed(base: int, *parts: int) -> int:
    state = base
    for part in parts:
        state, _ = splitmix64(state ^ part)
    _, out = splitmix64(state)
    return out


def run_adhoc(eval_specs: list[str], config: GameConfig,
              trials_per_pair: int = 1000, sample_sets: int = 100,
              games_per_sample_set: int = 10, base_seed: int = 0) -> CrossTable:
    """Ad-hoc crosstable over a pool of agent specs.

    Each off-diagonal trial: hand the evaluated (row) agent one of
    ``sample_sets`` pre-generated sets of the pool (column) agent's
    self-play games, seat it at a random position with the pool agent
    replicated in the other seats, play a single game, then reset it.
    Diagonal cells are pure self-play.  Seed ranges are disjoint per cell.
    """
    if sample_sets < 1 or trials_per_pair < 1:
        raise ValueError("need at least one sample set and one trial")
    n = len(eval_specs)
    p = config.players

    # Pre-generate sample-game bundles for every pool (column) agent.
    bundles: list[list[list[Replay]]] = []
    for col, spec in enumerate(eval_specs):
        agent_bundles = []
        for s in range(sample_sets):
            seed = _derive_seed(base_seed, 0xA5, col, s)
            _, replays = run_selfplay(
                spec, config, games_per_sample_set, base_seed=seed,
                keep_replays=True)
            agent_bundles.append(replays)
        bundles.append(agent_bundles)

    means = [[0.0] * n for _ in range(n)]
    errs = [[0.0] * n for _ in range(n)]
    logs = [[AdHocLog(eval_specs[i], eval_specs[j]) for j in range(n)]
            for i in range(n)]

    for row in range(n):
        for col in range(n):
            cell_seed = _derive_seed(base_seed, 0x5A, row, col)
            log = logs[row][col]
            scores = []
            evaluated = create_agent(eval_specs[row])
            teammates = [create_agent(eval_specs[col]) for _ in range(p - 1)]
            seat_rng = GameRng(_derive_seed(base_seed, 0x77, row, col))
            for t in range(trials_per_pair):
                evaluated.reset()
                for a in teammates:
                    a.reset()
                log.resets += 1
                set_id = t % sample_sets
                evaluated.ingest_sample_games(bundles[col][set_id])
                log.sample_set_ids.add(set_id)
                seat = seat_rng.randrange(p)
                log.seats.append(seat)
                agents = list(teammates)
                agents.insert(seat, evaluated)
                replay = play_game(
                    config, _derive_seed(cell_seed, t), agents,
                    [eval_specs[col]] * p)
                scores.append(replay.final_score)
                log.trials += 1
            means[row][col], errs[row][col] = _mean_stderr(scores)

    return CrossTable(
        agent_specs=list(eval_specs), players=p,
        trials_per_pair=trials_per_pair, means=means, std_errors=errs,
        logs=logs,
    )


# -- conditional action analysis -----------------------------------------


@dataclass
class ConditionalActionTable:
    """P(next action class | action class) plus the marginal P(class).

    Classes, in order: Discard by true card rank (R), Play by true card
    rank (R), HintColor by color (C), HintRank by rank (R).
    """

    config: GameConfig
    labels: list[str]
    conditional: list[list[float]]
    marginal: list[float]
    counts: list[list[int]]

    def to_dict(self) -> dict:
        return {
            "labels": self.labels,
            "conditional": self.conditional,
            "marginal": self.marginal,
        }

    def to_csv(self) -> str:
        lines = ["class," + ",".join(self.labels)]
        for label, row in zip(self.labels, self.conditional):
            lines.append(label + "," + ",".join(f"{x:.6f}" for x in row))
        lines.append("marginal," + ",".join(f"{x:.6f}" for x in self.marginal))
        return "\n".join(lines) + "\n"


def action_class_labels(config: GameConfig) -> list[str]:
    from .cards import COLOR_CHARS

    labels = [f"discard_{r}" for r in range(1, config.ranks + 1)]
    labels += [f"play_{r}" for r in range(1, config.ranks + 1)]
    labels += [f"hint_color_{COLOR_CHARS[c]}" for c in range(config.colors)]
    labels += [f"hint_rank_{r}" for r in range(1, config.ranks + 1)]
    return labels


def _action_class(outcome, config: GameConfig) -> int:
    from .game import MoveKind

    r = config.ranks
    move = outcome.move
    if move.kind is MoveKind.DISCARD:
        return outcome.revealed_card.rank - 1
    if move.kind is MoveKind.PLAY:
        return r + outcome.revealed_card.rank - 1
    if move.kind is MoveKind.REVEAL_COLOR:
        return 2 * r + move.color
    return 2 * r + config.colors + move.rank - 1


def conditional_action_table(replays: list[Replay]) -> ConditionalActionTable:
    """Classify every move and count successor pairs across turns."""
    if not replays:
        raise ValueError("no replays to analyze")
    config = replays[0].config
    k = 2 * config.ranks + config.colors + config.ranks
    counts = [[0] * k for _ in range(k)]
    totals = [0] * k
    for replay in replays:
        classes = [_action_class(o, config) for o in replay.outcomes]
        for c in classes:
            totals[c] += 1
        for a, b in zip(classes, classes[1:]):
            counts[a][b] += 1
    conditional = []
    for row in counts:
        s = sum(row)
        conditional.append([x / s for x in row] if s else [0.0] * k)
    total = sum(totals)
    marginal = [t / total for t in totals] if total else [0.0] * k
    return ConditionalActionTable(
        config=config, labels=action_class_labels(config),
        conditional=conditional, marginal=marginal, counts=counts,
    )


# -- sample-limited training budget stub ---------------------------------


@dataclass
class BudgetRunStats:
    episodes: int
    turns: int
    limit: int
    finished_in_flight: bool


def run_budgeted_episodes(agent_spec: str, config: GameConfig,
                          limit: int = StepBudget.DEFAULT_LIMIT,
                          base_seed: int = 0) -> BudgetRunStats:
    """Sample-limited-regime driver: run full episodes until the turn
    budget is consumed, always finishing the episode in flight."""
    budget = StepBudget(limit)
    env = HanabiEnv(config, budget=budget)
    agents = [create_agent(agent_spec) for _ in range(config.players)]
    episodes = 0
    finished_over_limit = False
    while not budget.exhausted:
        for agent in agents:
            agent.reset()
        step = env.reset(base_seed + episodes)
        for seat, agent in enumerate(agents):
            agent.begin_episode(seat, config)
        while not step.done:
            move = agents[step.player].act(step.observation)
            step = env.step(env.move_to_index(move))
            if budget.exhausted and not step.done:
                finished_over_limit = True
        episodes += 1
    return BudgetRunStats(
        episodes=episodes, turns=budget.consumed, limit=limit,
        finished_in_flight=finished_over_limit,
    )
