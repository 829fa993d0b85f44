"""Reference agents and the string-spec registry.

Agent specs are strings like ``"random:seed=7"``, ``"convention"``, or
``"hat"``; the part before the colon names the policy, key=value pairs
after it are constructor arguments.
"""

from __future__ import annotations

from .base import Agent
from .convention import ConventionAgent
from .hat import HatAgent, HatCode, hat_recommendation
from .random_agent import RandomAgent

_REGISTRY = {
    "random": RandomAgent,
    "convention": ConventionAgent,
    "hat": HatAgent,
}


class UnknownAgentError(ValueError):
    pass


def create_agent(spec: str) -> Agent:
    """Instantiate an agent from its string spec."""
    name, _, arg_str = spec.partition(":")
    cls = _REGISTRY.get(name)
    if cls is None:
        raise UnknownAgentError(
            f"unknown agent {name!r}; known: {sorted(_REGISTRY)}")
    kwargs = {}
    if arg_str:
        for pair in arg_str.split(","):
            key, _, value = pair.partition("=")
            if not _:
                raise UnknownAgentError(f"malformed agent argument {pair!r}")
            kwargs[key] = int(value) if value.lstrip("-").isdigit() else value
    return cls(**kwargs)


def register_agent(name: str, cls) -> None:
    _REGISTRY[name] = cls


__all__ = [
    "Agent", "ConventionAgent", "HatAgent", "HatCode", "RandomAgent",
    "create_agent", "register_agent", "hat_recommendation", "UnknownAgentError",
]
