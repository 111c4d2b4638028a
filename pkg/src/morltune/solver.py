"""Tabular multi-weight scalarized Q-learning returning a Pareto set and front.

The learner keeps one vector-valued Q table per preference weight on a
deterministic simplex grid and cycles episodes round-robin over the weights.
Greedy policies are evaluated periodically; the reported front is the
nondominated archive over all evaluations (learning may regress, the archive
cannot).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from sklearn.base import BaseEstimator

from ._validation import check_weight_vector
from .pareto import ParetoFront, pareto_filter

__all__ = [
    "MultiWeightQLearner",
    "ParetoSetMember",
    "PolicyTable",
    "SolverResult",
    "evaluate_greedy",
    "weight_grid",
]


def weight_grid(num_sample_w: int, objective_count: int) -> list[np.ndarray]:
    """Deterministic uniform grid on the weight simplex.

    All compositions of ``num_sample_w - 1`` into ``objective_count`` parts,
    normalized; always contains every unit vector. Ordered lexicographically
    descending so the first weight favors the first objective.
    """
    if num_sample_w < 2:
        raise ValueError("num_sample_w must be >= 2")
    if objective_count < 2:
        raise ValueError("objective_count must be >= 2")
    total = num_sample_w - 1

    def compositions(remaining: int, slots: int):
        if slots == 1:
            yield (remaining,)
            return
        for head in range(remaining, -1, -1):
            for tail in compositions(remaining - head, slots - 1):
                yield (head, *tail)

    return [
        np.asarray(parts, dtype=np.float64) / total
        for parts in compositions(total, objective_count)
    ]


@dataclass(frozen=True)
class PolicyTable:
    """Dense vector Q table together with the preference weight that trained it."""

    q: np.ndarray  # (states, actions, objectives)
    weight: np.ndarray

    def greedy_action(self, state_id: int) -> int:
        scores = self.q[state_id] @ self.weight
        return int(np.argmax(scores))  # ties resolve to the lowest action index


@dataclass(frozen=True)
class ParetoSetMember:
    weight: np.ndarray
    policy_id: str
    value: np.ndarray


@dataclass
class SolverResult:
    """Training output: Pareto set/front, snapshot series, per-weight values."""

    pareto_front: ParetoFront
    pareto_set: list[ParetoSetMember]
    snapshots: list[tuple[int, ParetoFront]]
    final_values: np.ndarray  # (n_weights, m) final greedy evaluation per weight
    policies: dict[str, PolicyTable] = field(repr=False, default_factory=dict)

    def to_dict(self) -> dict:
        """JSON-ready form; Q tables are nested lists keyed by policy id."""
        return {
            "pareto_front": self.pareto_front.to_lists(),
            "pareto_set": [
                {
                    "weight": member.weight.tolist(),
                    "policy_id": member.policy_id,
                    "value": member.value.tolist(),
                }
                for member in self.pareto_set
            ],
            "snapshots": [
                {"step": step, "front": front.to_lists()} for step, front in self.snapshots
            ],
            "per_weight_values": self.final_values.tolist(),
            "policies": {
                policy_id: {
                    "weight": table.weight.tolist(),
                    "q": table.q.tolist(),
                }
                for policy_id, table in self.policies.items()
            },
        }


def evaluate_greedy(env, policy: PolicyTable, weight, episodes: int, discount: float) -> np.ndarray:
    """Mean discounted vector return of the weight-greedy policy.

    Rollouts reset with fixed per-episode seeds, so evaluation is pure: it
    neither consumes training randomness nor varies between calls. Greedy
    ties break toward the lowest action index.
    """
    if episodes < 1:
        raise ValueError("episodes must be >= 1")
    weight = check_weight_vector(weight, expected_dim=env.spec.objective_count)
    total = np.zeros(env.spec.objective_count)
    for episode in range(episodes):
        state = env.reset(seed=episode)
        disc = 1.0
        while not env.terminal_table[state.state_id]:
            scores = policy.q[state.state_id] @ weight
            outcome = env.step(state, int(np.argmax(scores)))
            total += disc * outcome.reward
            disc *= discount
            if outcome.terminal or outcome.truncated:
                break
            state = outcome.next_state
    return total / episodes


class MultiWeightQLearner(BaseEstimator):
    """Scalarized epsilon-greedy Q-learning over a fixed weight grid.

    Parameters mirror the tunable hyperparameter space: exploration schedule
    (``initial_epsilon`` decays linearly to ``final_epsilon`` over
    ``epsilon_decay_steps`` environment steps), ``learning_rate``,
    ``num_sample_w`` weight-grid resolution, ``optimistic_init`` Q-table fill
    value, and ``eval_episodes`` rollouts per greedy evaluation.

    ``fit(env, seed=..., budget_steps=..., snapshot_every=...)`` trains for a
    step budget and exposes ``pareto_front_``, ``pareto_set_``, ``policies_``,
    ``snapshots_`` and ``result_``. Training is bit-reproducible: one
    counter-based generator (Philox) keyed by the seed drives exploration.
    """

    def __init__(
        self,
        learning_rate: float = 0.25,
        initial_epsilon: float = 1.0,
        final_epsilon: float = 0.05,
        epsilon_decay_steps: int = 10_000,
        num_sample_w: int = 4,
        optimistic_init: float = 0.0,
        eval_episodes: int = 1,
    ):
        self.learning_rate = learning_rate
        self.initial_epsilon = initial_epsilon
        self.final_epsilon = final_epsilon
        self.epsilon_decay_steps = epsilon_decay_steps
        self.num_sample_w = num_sample_w
        self.optimistic_init = optimistic_init
        self.eval_episodes = eval_episodes

    def _check_params(self):
        if not 0.0 < self.learning_rate <= 1.0:
            raise ValueError(f"learning_rate must be in (0, 1], got {self.learning_rate}")
        for name in ("initial_epsilon", "final_epsilon"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} must be in [0, 1], got {value}")
        if self.initial_epsilon < self.final_epsilon:
            raise ValueError("initial_epsilon must be >= final_epsilon")
        if self.epsilon_decay_steps < 1:
            raise ValueError("epsilon_decay_steps must be >= 1")
        if not 2 <= self.num_sample_w <= 10:
            raise ValueError(f"num_sample_w must be in [2, 10], got {self.num_sample_w}")
        if not np.isfinite(self.optimistic_init):
            raise ValueError("optimistic_init must be finite")
        if self.eval_episodes < 1:
            raise ValueError("eval_episodes must be >= 1")

    def _epsilon(self, step: int) -> float:
        frac = min(1.0, step / self.epsilon_decay_steps)
        return self.initial_epsilon + (self.final_epsilon - self.initial_epsilon) * frac

    def fit(self, env, seed: int = 0, budget_steps: int = 50_000, snapshot_every: int | None = None):
        self._check_params()
        if budget_steps < 1:
            raise ValueError("budget_steps must be >= 1")
        if snapshot_every is None:
            snapshot_every = budget_steps
        if snapshot_every < 1:
            raise ValueError("snapshot_every must be >= 1")

        spec = env.spec
        weights = weight_grid(self.num_sample_w, spec.objective_count)
        n_weights = len(weights)
        q = np.full(
            (n_weights, spec.state_count, spec.action_count, spec.objective_count),
            float(self.optimistic_init),
        )
        rng = np.random.Generator(np.random.Philox(key=seed))

        evaluations: list[tuple[np.ndarray, int, int, np.ndarray]] = []
        snapshots: list[tuple[int, ParetoFront]] = []
        seen_vectors: list[np.ndarray] = []

        def take_snapshot(step: int):
            for w_idx, weight in enumerate(weights):
                table = PolicyTable(q=q[w_idx].copy(), weight=weight)
                value = evaluate_greedy(env, table, weight, self.eval_episodes, spec.discount)
                evaluations.append((value, w_idx, step, table.q))
                seen_vectors.append(value)
            snapshots.append((step, pareto_filter(np.vstack(seen_vectors))))

        steps = 0
        episode = 0
        while steps < budget_steps:
            w_idx = episode % n_weights
            weight = weights[w_idx]
            state = env.reset(seed=int(rng.integers(2**63)))
            while True:
                sid = state.state_id
                if rng.random() < self._epsilon(steps):
                    action = int(rng.integers(spec.action_count))
                else:
                    action = int(np.argmax(q[w_idx, sid] @ weight))
                outcome = env.step(state, action)
                nid = outcome.next_state.state_id
                if outcome.terminal:
                    target = outcome.reward
                else:
                    # Truncation bootstraps: the time limit is not part of
                    # the environment's dynamics.
                    best_next = int(np.argmax(q[w_idx, nid] @ weight))
                    target = outcome.reward + spec.discount * q[w_idx, nid, best_next]
                q[w_idx, sid, action] += self.learning_rate * (target - q[w_idx, sid, action])
                steps += 1
                if steps % snapshot_every == 0:
                    take_snapshot(steps)
                if outcome.terminal or outcome.truncated or steps >= budget_steps:
                    break
                state = outcome.next_state
            episode += 1
        if not snapshots or snapshots[-1][0] != steps:
            take_snapshot(steps)

        final_front = snapshots[-1][1]
        front_rows = {row.tobytes() for row in final_front.points}
        members: list[ParetoSetMember] = []
        policies: dict[str, PolicyTable] = {}
        seen_identities: set[tuple] = set()
        for value, w_idx, step, q_copy in evaluations:
            if value.tobytes() not in front_rows:
                continue
            greedy = (q_copy @ weights[w_idx]).argmax(axis=1)
            identity = (w_idx, value.tobytes(), greedy.tobytes())
            if identity in seen_identities:
                continue
            seen_identities.add(identity)
            policy_id = f"w{w_idx}@step{step}"
            policies[policy_id] = PolicyTable(q=q_copy, weight=weights[w_idx])
            members.append(
                ParetoSetMember(weight=weights[w_idx], policy_id=policy_id, value=value)
            )

        final_values = np.vstack([value for value, _, _, _ in evaluations[-n_weights:]])
        self.weights_ = weights
        self.q_tables_ = q
        self.pareto_front_ = final_front
        self.pareto_set_ = members
        self.policies_ = policies
        self.snapshots_ = snapshots
        self.result_ = SolverResult(
            pareto_front=final_front,
            pareto_set=members,
            snapshots=snapshots,
            final_values=final_values,
            policies=policies,
        )
        return self
