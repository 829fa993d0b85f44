"""Command line front end: evaluation runs, replay tools, and the server."""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from .cards import GameConfig, ScoringMode
from .evaluate import (
    conditional_action_table,
    run_adhoc,
    run_selfplay,
)
from .replay import ReplayError, read, verify


def _build_config(players: int, scoring: str, small: bool) -> GameConfig:
    if small:
        return GameConfig.debug_small(players)
    return GameConfig.standard(players, ScoringMode(scoring))


def _emit(data: dict, output: str | None, csv_text: str | None = None) -> None:
    text = json.dumps(data, indent=2, sort_keys=True)
    if output is None or output == "-":
        click.echo(text)
        return
    path = Path(output)
    if path.suffix == ".csv" and csv_text is not None:
        path.write_text(csv_text)
    else:
        path.write_text(text + "\n")
    click.echo(f"wrote {path}")


@click.group()
def main():
    """Hanabi engine tools: self-play, ad-hoc crosstables, replays, server."""


players_opt = click.option("--players", "-p", default=2, show_default=True,
                           type=click.IntRange(2, 5))
scoring_opt = click.option("--scoring", default="zero_on_bomb_out",
                           show_default=True,
                           type=click.Choice(["zero_on_bomb_out", "cards_played"]))
seed_opt = click.option("--seed", default=0, show_default=True, type=int)
output_opt = click.option("--output", "-o", default=None,
                          help="Write JSON (or CSV for .csv paths) here "
                               "instead of stdout.")
small_opt = click.option("--small", is_flag=True,
                         help="Use the small debug config instead of the "
                              "standard one.")


@main.command()
@click.argument("agent")
@players_opt
@click.option("--games", "-n", default=1000, show_default=True, type=int)
@scoring_opt
@seed_opt
@small_opt
@output_opt
def selfplay(agent, players, games, scoring, seed, small, output):
    """Self-play evaluation of AGENT (e.g. hat, convention, random:seed=7)."""
    config = _build_config(players, scoring, small)
    report = run_selfplay(agent, config, games, base_seed=seed)
    _emit(report.to_dict(), output)


@main.command()
@click.argument("agents", nargs=-1, required=True)
@players_opt
@click.option("--trials", default=1000, show_default=True, type=int,
              help="Trials per crosstable cell.")
@click.option("--sample-sets", default=100, show_default=True, type=int)
@scoring_opt
@seed_opt
@small_opt
@output_opt
def adhoc(agents, players, trials, sample_sets, scoring, seed, small, output):
    """Ad-hoc crosstable over a pool of AGENTS."""
    config = _build_config(players, scoring, small)
    table = run_adhoc(list(agents), config, trials_per_pair=trials,
                      sample_sets=sample_sets, base_seed=seed)
    _emit(table.to_dict(), output, csv_text=table.to_csv())


@main.command()
@click.argument("agent")
@players_opt
@click.option("--games", "-n", default=1000, show_default=True, type=int)
@scoring_opt
@seed_opt
@small_opt
@output_opt
def analyze(agent, players, games, scoring, seed, small, output):
    """Conditional action-class table from AGENT self-play games."""
    config = _build_config(players, scoring, small)
    _, replays = run_selfplay(agent, config, games, base_seed=seed,
                              keep_replays=True)
    table = conditional_action_table(replays)
    _emit(table.to_dict(), output, csv_text=table.to_csv())


@main.group()
def replay():
    """Inspect and verify .hnb.jsonl replay files."""


@replay.command("verify")
@click.argument("path", type=click.Path(exists=True))
def replay_verify(path):
    """Re-simulate PATH and report the first divergence, if any."""
    try:
        divergence = verify(read(path))
    except ReplayError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(2)
    if divergence is None:
        click.echo("ok")
    else:
        click.echo(str(divergence), err=True)
        sys.exit(1)


@replay.command("show")
@click.argument("path", type=click.Path(exists=True))
def replay_show(path):
    """Print the header and move list of PATH."""
    try:
        rec = read(path)
    except ReplayError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(2)
    click.echo(json.dumps(rec.header_dict(), indent=2, sort_keys=True))
    for turn, outcome in enumerate(rec.outcomes):
        parts = [f"{turn:3d}", f"p{outcome.actor}", outcome.move.text()]
        if outcome.revealed_card is not None:
            parts.append(outcome.revealed_card.text())
        if outcome.move.kind.name == "PLAY":
            parts.append("ok" if outcome.success else "misfire")
        click.echo("  ".join(parts))


@main.command()
@click.option("--port", default=8000, show_default=True, type=int)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--replay-dir", default=None,
              help="Directory for finished-game replays.")
@click.option("--bot-delay", default=0.0, show_default=True, type=float,
              help="Pause in seconds before each bot move.")
def serve(port, host, replay_dir, bot_delay):
    """Run the live-play WebSocket service."""
    import uvicorn

    from .service import create_app

    app = create_app(replay_dir=replay_dir, bot_delay=bot_delay)
    uvicorn.run(app, host=host, port=port)


if __name__ == "__main__":
    main()
