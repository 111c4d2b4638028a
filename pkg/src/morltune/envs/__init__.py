"""Seedable multi-objective MDP environments with computable optimal fronts."""

from __future__ import annotations

from importlib import resources

from .base import EnvState, MomdpSpec, StepOutcome, TabularMomdp
from .envfile import build_env, load_env_file, parse_keyvalue_text
from .oracle import true_front

__all__ = [
    "EnvState",
    "MomdpSpec",
    "StepOutcome",
    "TabularMomdp",
    "available_envs",
    "build_env",
    "load_env_file",
    "make",
    "parse_keyvalue_text",
    "true_front",
]

_REGISTRY = {
    "dst": "dst.env",
    "gem-minecart": "gem_minecart.env",
}


def available_envs() -> list[str]:
    return sorted(_REGISTRY)


def make(name: str) -> TabularMomdp:
    """Build a bundled environment by registry name."""
    if name not in _REGISTRY:
        raise KeyError(f"unknown environment {name!r}; available: {available_envs()}")
    text = resources.files(__package__).joinpath("specs", _REGISTRY[name]).read_text()
    return build_env(text, source=f"{name} (bundled)")
