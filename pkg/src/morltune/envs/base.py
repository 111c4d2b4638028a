"""Tabular multi-objective MDPs with explicit transition and reward tables.

Environments are immutable: ``reset``/``step`` take and return explicit
state values, so a single instance is safe to share between rollouts.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass

import numpy as np

__all__ = ["MomdpSpec", "EnvState", "StepOutcome", "TabularMomdp"]


@dataclass(frozen=True)
class MomdpSpec:
    """Structural parameters of a finite MOMDP."""

    state_count: int
    action_count: int
    objective_count: int
    discount: float
    max_episode_steps: int
    initial_state_distribution: np.ndarray

    def __post_init__(self):
        if self.state_count < 1 or self.action_count < 1:
            raise ValueError("state and action counts must be positive")
        if self.objective_count < 2:
            raise ValueError("need at least two objectives")
        if not 0.0 <= self.discount < 1.0:
            raise ValueError(f"discount must lie in [0, 1), got {self.discount}")
        if self.max_episode_steps < 1:
            raise ValueError("max_episode_steps must be positive")
        dist = np.asarray(self.initial_state_distribution, dtype=np.float64)
        if dist.shape != (self.state_count,):
            raise ValueError("initial state distribution length must equal state_count")
        if (dist < 0).any() or abs(float(dist.sum()) - 1.0) > 1e-9:
            raise ValueError("initial state distribution must be a probability vector")
        dist.setflags(write=False)
        object.__setattr__(self, "initial_state_distribution", dist)


@dataclass(frozen=True)
class EnvState:
    """Discrete state identifier plus the episode's step counter."""

    state_id: int
    step_count: int = 0


@dataclass(frozen=True)
class StepOutcome:
    next_state: EnvState
    reward: np.ndarray
    terminal: bool
    truncated: bool


class TabularMomdp:
    """Deterministic-dynamics MOMDP backed by dense lookup tables.

    Args:
        spec: structural parameters.
        next_state: (S, A) int array of successor state ids.
        rewards: (S, A, m) float array of vector rewards.
        terminal: (S,) bool array marking absorbing goal states.
        name: registry name used in artifacts and the CLI.
        default_ref_point: lower-bound reference point for hypervolume,
            taken from the environment definition file.
        layout: optional structured description of the source definition
            (grid dimensions, treasure positions, ...) for introspection.
        enumerable_outcomes: True when every episode ends in a terminal
            state and shortest-path enumeration of outcomes is exhaustive.
    """

    def __init__(
        self,
        spec: MomdpSpec,
        next_state: np.ndarray,
        rewards: np.ndarray,
        terminal: np.ndarray,
        name: str,
        default_ref_point,
        layout: dict | None = None,
        enumerable_outcomes: bool = False,
    ):
        next_state = np.asarray(next_state, dtype=np.int64)
        rewards = np.asarray(rewards, dtype=np.float64)
        terminal = np.asarray(terminal, dtype=bool)
        if next_state.shape != (spec.state_count, spec.action_count):
            raise ValueError("next_state table shape mismatch")
        if rewards.shape != (spec.state_count, spec.action_count, spec.objective_count):
            raise ValueError("rewards table shape mismatch")
        if terminal.shape != (spec.state_count,):
            raise ValueError("terminal table shape mismatch")
        if not np.isfinite(rewards).all():
            raise ValueError("rewards must be finite")
        if next_state.min() < 0 or next_state.max() >= spec.state_count:
            raise ValueError("next_state table points outside the state space")
        for table in (next_state, rewards, terminal):
            table.setflags(write=False)
        self.spec = spec
        self.next_state_table = next_state
        self.reward_table = rewards
        self.terminal_table = terminal
        self.name = name
        self.default_ref_point = np.asarray(default_ref_point, dtype=np.float64)
        if self.default_ref_point.shape != (spec.objective_count,):
            raise ValueError("default reference point dimension mismatch")
        self.default_ref_point.setflags(write=False)
        self.layout = dict(layout or {})
        self.enumerable_outcomes = enumerable_outcomes

    def reset(self, seed: int) -> EnvState:
        """Draw the initial state from the start distribution; deterministic per seed."""
        rng = np.random.default_rng(seed)
        dist = self.spec.initial_state_distribution
        state_id = int(rng.choice(self.spec.state_count, p=dist))
        return EnvState(state_id=state_id, step_count=0)

    def step(self, state: EnvState, action: int) -> StepOutcome:
        """Advance one step. Raises on terminal states and out-of-range actions."""
        if self.terminal_table[state.state_id]:
            raise ValueError(f"cannot step terminal state {state.state_id}")
        if not 0 <= action < self.spec.action_count:
            raise ValueError(f"action {action} outside [0, {self.spec.action_count})")
        next_id = int(self.next_state_table[state.state_id, action])
        reward = self.reward_table[state.state_id, action]
        steps = state.step_count + 1
        return StepOutcome(
            next_state=EnvState(state_id=next_id, step_count=steps),
            reward=reward,
            terminal=bool(self.terminal_table[next_id]),
            truncated=steps >= self.spec.max_episode_steps,
        )

    @property
    def cache_key(self) -> str:
        """Content hash identifying this environment's dynamics and spec."""
        digest = hashlib.sha256()
        digest.update(self.name.encode())
        digest.update(repr((
            self.spec.state_count,
            self.spec.action_count,
            self.spec.objective_count,
            self.spec.discount,
            self.spec.max_episode_steps,
        )).encode())
        digest.update(self.spec.initial_state_distribution.tobytes())
        digest.update(self.next_state_table.tobytes())
        digest.update(self.reward_table.tobytes())
        digest.update(self.terminal_table.tobytes())
        return digest.hexdigest()
