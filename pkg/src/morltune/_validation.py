"""Input validation helpers shared across the package."""

from __future__ import annotations

import numpy as np

WEIGHT_SUM_TOL = 1e-12


def check_value_vector(v, expected_dim: int | None = None) -> np.ndarray:
    """Coerce ``v`` to a finite 1-D float64 array with at least two entries."""
    arr = np.asarray(v, dtype=np.float64)
    if arr.ndim != 1:
        raise ValueError(f"value vector must be 1-D, got shape {arr.shape}")
    if arr.shape[0] < 2:
        raise ValueError("value vectors need at least two objectives")
    if not np.isfinite(arr).all():
        raise ValueError(f"value vector contains non-finite entries: {arr}")
    if expected_dim is not None and arr.shape[0] != expected_dim:
        raise ValueError(
            f"dimension mismatch: expected {expected_dim} objectives, got {arr.shape[0]}"
        )
    return arr


def check_point_set(points, expected_dim: int | None = None) -> np.ndarray:
    """Coerce a collection of value vectors to a finite (n, m) float64 array.

    An empty input is allowed only when the objective count can be inferred,
    either from the array shape or from ``expected_dim``.
    """
    if isinstance(points, np.ndarray) and points.ndim == 2:
        arr = points.astype(np.float64, copy=False)
    else:
        rows = [check_value_vector(p, expected_dim) for p in points]
        if not rows:
            if expected_dim is None:
                raise ValueError(
                    "cannot infer objective count from an empty point list; "
                    "pass objective_count explicitly"
                )
            return np.empty((0, expected_dim), dtype=np.float64)
        dims = {r.shape[0] for r in rows}
        if len(dims) > 1:
            raise ValueError(f"mixed objective counts in point set: {sorted(dims)}")
        arr = np.vstack(rows)
    if arr.shape[1] < 2:
        raise ValueError("point sets need at least two objectives")
    if not np.isfinite(arr).all():
        raise ValueError("point set contains non-finite entries")
    if expected_dim is not None and arr.shape[1] != expected_dim:
        raise ValueError(
            f"dimension mismatch: expected {expected_dim} objectives, got {arr.shape[1]}"
        )
    return arr


def check_weight_vector(w, expected_dim: int | None = None) -> np.ndarray:
    """Validate a preference weight vector: nonnegative, sums to one."""
    arr = np.asarray(w, dtype=np.float64)
    if arr.ndim != 1:
        raise ValueError(f"weight vector must be 1-D, got shape {arr.shape}")
    if expected_dim is not None and arr.shape[0] != expected_dim:
        raise ValueError(
            f"dimension mismatch: expected {expected_dim} weights, got {arr.shape[0]}"
        )
    if (arr < 0).any():
        raise ValueError(f"weights must be nonnegative: {arr}")
    if abs(float(arr.sum()) - 1.0) > WEIGHT_SUM_TOL:
        raise ValueError(f"weights must sum to 1 (got {arr.sum()!r})")
    return arr


def check_seed_sets_disjoint(search_seeds, validation_seeds) -> None:
    """Reject overlapping search/validation seed sets before any training runs."""
    overlap = set(search_seeds) & set(validation_seeds)
    if overlap:
        raise ValueError(
            f"search and validation seed sets must be disjoint; both contain {sorted(overlap)}"
        )
    if not search_seeds or not validation_seeds:
        raise ValueError("seed sets must be nonempty")
