"""Parser for the plain-text environment definition format.

Definition files are line-oriented ``key = value`` text. ``#`` starts a
comment, blank lines are ignored, and a key may repeat to build up a list
(e.g. one ``treasure`` line per treasure cell). Keys understood by every
kind:

    name               registry name of the environment
    kind               builder selector: ``treasure_grid`` | ``minecart_grid``
    discount           discount factor in [0, 1)
    max_episode_steps  truncation limit
    ref_point          comma-separated lower-bound reference point for
                       hypervolume, one entry per objective

``treasure_grid`` keys: ``rows``, ``cols``, ``start`` (``row, col``) and one
``treasure = row, col, value`` line per treasure. Cells below a treasure in
its column are seabed and block movement.

``minecart_grid`` keys: ``rows``, ``cols``, ``depot``, ``mine_a``,
``mine_b`` (each ``row, col``) and ``cart_capacity`` (must be 1).
"""

from __future__ import annotations

from pathlib import Path

__all__ = ["parse_keyvalue_text", "load_env_file", "build_env"]


def parse_keyvalue_text(text: str) -> list[tuple[str, str]]:
    """Parse ``key = value`` lines into an ordered list of pairs."""
    pairs: list[tuple[str, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"line {lineno}: expected 'key = value', got {raw!r}")
        key, value = line.split("=", 1)
        key = key.strip()
        value = value.strip()
        if not key:
            raise ValueError(f"line {lineno}: empty key")
        pairs.append((key, value))
    return pairs


class KeyValueView:
    """Typed access over parsed pairs with missing/duplicate-key errors."""

    def __init__(self, pairs: list[tuple[str, str]], source: str = "<text>"):
        self.pairs = pairs
        self.source = source

    def get(self, key: str, default: str | None = None) -> str:
        values = [v for k, v in self.pairs if k == key]
        if not values:
            if default is not None:
                return default
            raise ValueError(f"{self.source}: missing required key {key!r}")
        if len(values) > 1:
            raise ValueError(f"{self.source}: key {key!r} given more than once")
        return values[0]

    def get_all(self, key: str) -> list[str]:
        return [v for k, v in self.pairs if k == key]

    def get_int(self, key: str, default: str | None = None) -> int:
        return int(self.get(key, default))

    def get_float(self, key: str, default: str | None = None) -> float:
        return float(self.get(key, default))

    def get_floats(self, key: str, default: str | None = None) -> list[float]:
        return [float(part) for part in self.get(key, default).split(",")]

    def get_cell(self, key: str) -> tuple[int, int]:
        parts = self.get(key).split(",")
        if len(parts) != 2:
            raise ValueError(f"{self.source}: {key!r} must be 'row, col'")
        return int(parts[0]), int(parts[1])


def build_env(text: str, source: str = "<text>"):
    """Build a :class:`~morltune.envs.base.TabularMomdp` from definition text."""
    from . import gridworlds

    view = KeyValueView(parse_keyvalue_text(text), source=source)
    kind = view.get("kind")
    builders = {
        "treasure_grid": gridworlds.build_treasure_grid,
        "minecart_grid": gridworlds.build_minecart_grid,
    }
    if kind not in builders:
        raise ValueError(
            f"{source}: unknown environment kind {kind!r}; expected one of {sorted(builders)}"
        )
    return builders[kind](view)


def load_env_file(path):
    path = Path(path)
    return build_env(path.read_text(), source=str(path))
