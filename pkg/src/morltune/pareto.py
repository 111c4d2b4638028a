"""Pareto dominance and nondominated-set maintenance for value vectors.

All objectives are maximized. Cost-like objectives (fuel, time) are encoded
as negative rewards by the environments, so "higher is better" holds
throughout the package.
"""

from __future__ import annotations

from typing import Iterator

import numpy as np

from ._validation import check_point_set, check_value_vector

__all__ = ["ParetoFront", "dominates", "pareto_filter", "archive_insert"]


def dominates(a, b) -> bool:
    """True iff ``a`` is componentwise >= ``b`` with at least one strict >."""
    a = check_value_vector(a)
    b = check_value_vector(b, expected_dim=a.shape[0])
    return bool((a >= b).all() and (a > b).any())


def _nondominated_mask(points: np.ndarray) -> np.ndarray:
    """Mask of nondominated rows; ``points`` must contain no duplicate rows."""
    n = points.shape[0]
    if n <= 1:
        return np.ones(n, dtype=bool)
    # With unique rows, all(a >= b) for a != b implies at least one strict >.
    ge = (points[:, None, :] >= points[None, :, :]).all(axis=2)
    np.fill_diagonal(ge, False)
    return ~ge.any(axis=0)


class ParetoFront:
    """An immutable, mutually nondominated set of value vectors.

    Points are stored deduplicated and in canonical (lexicographic ascending)
    order so that serialized fronts are bit-reproducible.
    """

    __slots__ = ("_points", "_m")

    def __init__(self, points, objective_count: int | None = None):
        arr = check_point_set(points, expected_dim=objective_count)
        arr = np.unique(arr, axis=0)  # dedup + canonical lexicographic order
        mask = _nondominated_mask(arr)
        if not mask.all():
            bad = arr[~mask]
            raise ValueError(f"points are not mutually nondominated: {bad.tolist()}")
        arr.setflags(write=False)
        self._points = arr
        self._m = arr.shape[1]

    @classmethod
    def empty(cls, objective_count: int) -> "ParetoFront":
        return cls(np.empty((0, objective_count)), objective_count=objective_count)

    @property
    def points(self) -> np.ndarray:
        """Read-only (n, m) array in canonical order."""
        return self._points

    @property
    def objective_count(self) -> int:
        return self._m

    def __len__(self) -> int:
        return self._points.shape[0]

    def __iter__(self) -> Iterator[np.ndarray]:
        return iter(self._points)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ParetoFront):
            return NotImplemented
        return self._m == other._m and np.array_equal(self._points, other._points)

    def __repr__(self) -> str:
        return f"ParetoFront({self._points.tolist()!r})"

    def to_lists(self) -> list[list[float]]:
        """JSON-ready representation: array of arrays in canonical order."""
        return [[float(x) for x in row] for row in self._points]

    @classmethod
    def from_lists(cls, data, objective_count: int | None = None) -> "ParetoFront":
        return cls(data, objective_count=objective_count)


def pareto_filter(points, objective_count: int | None = None) -> ParetoFront:
    """Return the nondominated subset of ``points`` as a canonical front.

    Duplicates collapse to a single member. An empty input needs
    ``objective_count`` (or an (0, m)-shaped array) to fix the dimension.
    """
    arr = check_point_set(points, expected_dim=objective_count)
    arr = np.unique(arr, axis=0)
    return ParetoFront(arr[_nondominated_mask(arr)], objective_count=arr.shape[1])


def archive_insert(front: ParetoFront, v) -> tuple[ParetoFront, bool]:
    """Insert ``v`` into an archive front.

    Returns ``(front, False)`` unchanged when ``v`` is dominated by or equal
    to an existing point; otherwise returns a new front with ``v`` added and
    everything it dominates removed, plus ``accepted=True``.
    """
    v = check_value_vector(v, expected_dim=front.objective_count)
    points = front.points
    if points.shape[0]:
        covered = (points >= v).all(axis=1)  # dominated-by or equal
        if covered.any():
            return front, False
        dominated = (v >= points).all(axis=1)
        survivors = points[~dominated]
    else:
        survivors = points
    merged = np.vstack([survivors, v[None, :]])
    return ParetoFront(merged, objective_count=front.objective_count), True
