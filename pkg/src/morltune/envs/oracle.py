"""Reference ("true") Pareto fronts for small tabular environments.

The front is computed, never hand-tabulated: scalarized value iteration
over a dense preference-weight grid recovers every linearly-supported
policy, and for episodic environments with a single start state a
breadth-first enumeration of shortest episode outcomes adds the points
linear scalarization cannot reach. The union is filtered to its
nondominated subset and cached per environment content hash.
"""

from __future__ import annotations

from collections import deque

import numpy as np

from ..pareto import ParetoFront, pareto_filter
from ..solver import weight_grid
from .base import TabularMomdp

__all__ = ["true_front", "scalarized_value_iteration", "rollout_return"]

MAX_ORACLE_TABLE_SIZE = 1_000_000

# Weight-grid density per objective count (simplex grid resolution).
_GRID_RESOLUTION = {2: 201, 3: 33, 4: 11}

_VI_MAX_ITERS = 1500

_front_cache: dict[str, ParetoFront] = {}


def scalarized_value_iteration(env: TabularMomdp, weights: np.ndarray) -> np.ndarray:
    """Greedy policies (one per weight row) from scalar value iteration.

    Runs the discounted Bellman backup on the weighted scalar reward for all
    weights at once, for a fixed iteration budget with an early exit on exact
    convergence. Returns an int array of shape (n_weights, n_states).
    """
    spec = env.spec
    ns = env.next_state_table
    arrival_mask = np.where(env.terminal_table[ns], 0.0, 1.0)  # (S, A)
    wr = np.einsum("wm,sam->wsa", weights, env.reward_table)
    v = np.zeros((weights.shape[0], spec.state_count))
    q = wr.copy()
    for _ in range(_VI_MAX_ITERS):
        q = wr + spec.discount * arrival_mask[None, :, :] * v[:, ns]
        v_new = q.max(axis=2)
        v_new[:, env.terminal_table] = 0.0
        if np.array_equal(v_new, v):
            break
        v = v_new
    return q.argmax(axis=2)


def rollout_return(env: TabularMomdp, policies: np.ndarray, start: int) -> np.ndarray:
    """Exact discounted vector return of each policy from ``start``.

    Deterministic dynamics make a single truncated rollout exact. Returns an
    array of shape (n_policies, m).
    """
    spec = env.spec
    n = policies.shape[0]
    state = np.full(n, start, dtype=np.int64)
    active = np.full(n, not env.terminal_table[start])
    totals = np.zeros((n, spec.objective_count))
    disc = 1.0
    rows = np.arange(n)
    for _ in range(spec.max_episode_steps):
        if not active.any():
            break
        action = policies[rows, state]
        reward = env.reward_table[state, action]
        totals += disc * reward * active[:, None]
        nxt = env.next_state_table[state, action]
        state = np.where(active, nxt, state)
        active = active & ~env.terminal_table[state]
        disc *= spec.discount
    return totals


def _enumerate_shortest_outcomes(env: TabularMomdp, start: int) -> list[np.ndarray]:
    """Discounted returns of shortest paths from ``start`` to each terminal state.

    Breadth-first search over the deterministic transition table; each
    terminal state is credited at its minimum step count with the rewards
    accumulated along the search-tree path. Outcomes longer than the episode
    limit are unreachable before truncation and are dropped.
    """
    spec = env.spec
    seen = {start}
    # queue entries: (state, depth, discounted reward accumulated so far)
    queue = deque([(start, 0, np.zeros(spec.objective_count))])
    outcomes: list[np.ndarray] = []
    while queue:
        state, depth, acc = queue.popleft()
        if depth >= spec.max_episode_steps:
            continue
        for action in range(spec.action_count):
            nxt = int(env.next_state_table[state, action])
            if nxt in seen:
                continue
            seen.add(nxt)
            value = acc + spec.discount**depth * env.reward_table[state, action]
            if env.terminal_table[nxt]:
                outcomes.append(value)
            else:
                queue.append((nxt, depth + 1, value))
    return outcomes


def true_front(env: TabularMomdp) -> ParetoFront:
    """Exact Pareto front of deterministic-policy value vectors; cached.

    Raises:
        ValueError: when the environment is too large for exhaustive
            solution or its objective count has no configured weight grid.
    """
    key = env.cache_key
    cached = _front_cache.get(key)
    if cached is not None:
        return cached
    spec = env.spec
    if spec.state_count * spec.action_count > MAX_ORACLE_TABLE_SIZE:
        raise ValueError(
            f"environment too large for the exact front oracle: "
            f"{spec.state_count} states x {spec.action_count} actions"
        )
    resolution = _GRID_RESOLUTION.get(spec.objective_count)
    if resolution is None:
        raise ValueError(
            f"front oracle supports {sorted(_GRID_RESOLUTION)} objectives, "
            f"got {spec.objective_count}"
        )
    weights = np.vstack(weight_grid(resolution, spec.objective_count))
    policies = scalarized_value_iteration(env, weights)

    dist = spec.initial_state_distribution
    starts = np.flatnonzero(dist)
    vectors = np.zeros((weights.shape[0], spec.objective_count))
    for start in starts:
        vectors += dist[start] * rollout_return(env, policies, int(start))
    points = [vectors]
    if env.enumerable_outcomes and len(starts) == 1:
        outcomes = _enumerate_shortest_outcomes(env, int(starts[0]))
        if outcomes:
            points.append(np.vstack(outcomes))
    front = pareto_filter(np.vstack(points))
    _front_cache[key] = front
    return front
