"""Scalar quality metrics for Pareto fronts.

Four metrics turn a front into a comparable score:

* ``hypervolume`` — volume dominated by the front above a reference point
  (hybrid convergence + diversity, higher is better),
* ``igd`` — inverted generational distance to a known optimal front
  (convergence, lower is better),
* ``sparsity`` — sum of squared per-objective gaps (diversity, lower is
  denser),
* ``expected_utility`` — expected best weighted-sum utility under uniformly
  random preference weights (higher is better).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ._validation import check_point_set, check_value_vector
from .pareto import ParetoFront, pareto_filter

__all__ = [
    "MetricConfig",
    "HIGHER_IS_BETTER",
    "hypervolume",
    "hypervolume_mc",
    "igd",
    "sparsity",
    "expected_utility",
    "metric_snapshot",
]

MAX_EXACT_HV_DIM = 4

#: Orientation of each metric; used when a lower-is-better metric is turned
#: into a maximization objective by the search engine.
HIGHER_IS_BETTER = {"hv": True, "igd": False, "sparsity": False, "eu": True}


def _exclusive_volumes(points: np.ndarray) -> float:
    """Recursive dimension-sweep hypervolume of ``points`` relative to the origin.

    ``points`` must be strictly positive (already shifted by the reference
    point), deduplicated and mutually nondominated. Each point contributes its
    box volume minus the volume of that box already covered by later points.
    """
    n = points.shape[0]
    if n == 0:
        return 0.0
    if n == 1:
        return float(np.prod(points[0]))
    total = 0.0
    for i in range(n):
        p = points[i]
        rest = points[i + 1 :]
        total += float(np.prod(p))
        if rest.shape[0]:
            clipped = np.minimum(rest, p)
            clipped = np.unique(clipped, axis=0)
            keep = ~((clipped[:, None, :] >= clipped[None, :, :]).all(axis=2)
                     & ~np.eye(clipped.shape[0], dtype=bool)).any(axis=0)
            total -= _exclusive_volumes(clipped[keep])
    return total


def hypervolume(front: ParetoFront, ref_point) -> float:
    """Exact hypervolume of ``front`` with respect to a lower-bound reference point.

    Only points strictly dominating the reference point contribute; others are
    skipped (their box is empty or ill-formed). An empty front has volume 0.

    Raises:
        ValueError: when the objective count exceeds the exact algorithm's
            supported range (use :func:`hypervolume_mc` beyond it).
    """
    ref = check_value_vector(ref_point, expected_dim=front.objective_count)
    if front.objective_count > MAX_EXACT_HV_DIM:
        raise ValueError(
            f"exact hypervolume supports up to {MAX_EXACT_HV_DIM} objectives, "
            f"got {front.objective_count}; use hypervolume_mc instead"
        )
    points = front.points
    if points.shape[0] == 0:
        return 0.0
    above = points[(points > ref).all(axis=1)] - ref
    if above.shape[0] == 0:
        return 0.0
    # Descending order in the last objective tightens the recursion's clipping.
    order = np.lexsort(above.T)[::-1]
    return _exclusive_volumes(above[order])


def hypervolume_mc(front: ParetoFront, ref_point, samples: int, rng_seed: int) -> float:
    """Monte-Carlo hypervolume estimate; statistical oracle for the exact algorithm.

    Samples uniformly in the box spanned by the reference point and the
    componentwise maximum of the front, and scales the dominated fraction by
    the box volume. Deterministic given ``rng_seed``.
    """
    ref = check_value_vector(ref_point, expected_dim=front.objective_count)
    if samples < 1:
        raise ValueError("samples must be >= 1")
    points = front.points
    if points.shape[0] == 0:
        return 0.0
    upper = points.max(axis=0)
    extent = upper - ref
    if (extent <= 0).any():
        return 0.0
    box_volume = float(np.prod(extent))
    rng = np.random.default_rng(rng_seed)
    hits = 0
    remaining = samples
    while remaining:
        chunk = min(remaining, 200_000)
        draws = ref + rng.random((chunk, front.objective_count)) * extent
        covered = (points[None, :, :] >= draws[:, None, :]).all(axis=2).any(axis=1)
        hits += int(covered.sum())
        remaining -= chunk
    return box_volume * hits / samples


def igd(front: ParetoFront, reference: ParetoFront) -> float:
    """Inverted generational distance from a known optimal front to ``front``.

    Computed as ``sqrt(sum of squared nearest-neighbor distances) / |reference|``
    with Euclidean distances; 0 iff every reference point is matched exactly.
    Lower is better.
    """
    if len(reference) == 0:
        raise ValueError("reference front must be nonempty")
    if len(front) == 0:
        raise ValueError("igd is undefined for an empty front")
    if front.objective_count != reference.objective_count:
        raise ValueError("front and reference front have mismatched objective counts")
    diffs = reference.points[:, None, :] - front.points[None, :, :]
    sq_dists = (diffs * diffs).sum(axis=2).min(axis=1)
    return float(np.sqrt(sq_dists.sum()) / len(reference))


def sparsity(front: ParetoFront) -> float:
    """Sum of squared gaps between consecutive sorted per-objective values.

    Normalized by ``len(front) - 1``; fronts of size <= 1 have no gaps and
    score 0 by convention. Lower means denser coverage.
    """
    n = len(front)
    if n <= 1:
        return 0.0
    sorted_cols = np.sort(front.points, axis=0)
    gaps = np.diff(sorted_cols, axis=0)
    return float((gaps * gaps).sum() / (n - 1))


def expected_utility(front: ParetoFront, samples: int, rng_seed: int) -> float:
    """Monte-Carlo expected best weighted-sum utility over random preferences.

    Weights are drawn uniformly from the simplex (normalized exponential
    draws). Deterministic given ``rng_seed``.
    """
    if len(front) == 0:
        raise ValueError("expected utility is undefined for an empty front")
    if samples < 1:
        raise ValueError("samples must be >= 1")
    rng = np.random.default_rng(rng_seed)
    draws = rng.standard_exponential((samples, front.objective_count))
    weights = draws / draws.sum(axis=1, keepdims=True)
    best = (weights @ front.points.T).max(axis=1)
    return float(best.mean())


@dataclass(frozen=True)
class MetricConfig:
    """Per-environment metric parameters: reference point, optional reference
    front for IGD, and the expected-utility sampling budget."""

    ref_point: np.ndarray
    reference_front: ParetoFront | None = None
    eu_samples: int = 10_000
    eu_seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "ref_point", check_value_vector(self.ref_point))
        if self.reference_front is not None and (
            self.reference_front.objective_count != self.ref_point.shape[0]
        ):
            raise ValueError("reference front and reference point dimensions differ")

    def replace_reference_front(self, reference: ParetoFront | None) -> "MetricConfig":
        return MetricConfig(self.ref_point, reference, self.eu_samples, self.eu_seed)


def metric_snapshot(front: ParetoFront, config: MetricConfig) -> dict[str, float | None]:
    """All four metrics as a flat record with keys ``hv``, ``igd``, ``sparsity``, ``eu``.

    ``igd`` is None when no reference front is configured; an empty front
    yields ``{hv: 0, sparsity: 0, eu: None, igd: None}``.
    """
    if len(front) == 0:
        return {"hv": 0.0, "igd": None, "sparsity": 0.0, "eu": None}
    snapshot: dict[str, float | None] = {
        "hv": hypervolume(front, config.ref_point),
        "igd": None,
        "sparsity": sparsity(front),
        "eu": expected_utility(front, config.eu_samples, config.eu_seed),
    }
    if config.reference_front is not None:
        snapshot["igd"] = igd(front, config.reference_front)
    return snapshot
