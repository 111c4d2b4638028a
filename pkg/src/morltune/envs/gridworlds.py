"""Grid-based MOMDP builders: treasure diving and two-mine ore delivery."""

from __future__ import annotations

import numpy as np

from .base import MomdpSpec, TabularMomdp
from .envfile import KeyValueView

__all__ = ["build_treasure_grid", "build_minecart_grid"]

# Moves indexed 0..3: up, down, left, right.
_MOVES = ((-1, 0), (1, 0), (0, -1), (0, 1))


def build_treasure_grid(view: KeyValueView) -> TabularMomdp:
    """Submarine gridworld: objectives (treasure value, -time).

    Every step costs one time unit; reaching a treasure cell ends the
    episode with that cell's value on the first objective. Cells below a
    treasure in its column are seabed and block movement (the move is spent
    but the submarine stays put), as do the grid edges.
    """
    rows = view.get_int("rows")
    cols = view.get_int("cols")
    start = view.get_cell("start")
    treasures: dict[tuple[int, int], float] = {}
    for entry in view.get_all("treasure"):
        parts = entry.split(",")
        if len(parts) != 3:
            raise ValueError(f"{view.source}: treasure entries must be 'row, col, value'")
        r, c, value = int(parts[0]), int(parts[1]), float(parts[2])
        if not (0 <= r < rows and 0 <= c < cols):
            raise ValueError(f"{view.source}: treasure at ({r}, {c}) outside the grid")
        if (r, c) in treasures:
            raise ValueError(f"{view.source}: duplicate treasure cell ({r}, {c})")
        treasures[(r, c)] = value
    if not treasures:
        raise ValueError(f"{view.source}: a treasure grid needs at least one treasure")
    if start in treasures:
        raise ValueError(f"{view.source}: start cell cannot hold a treasure")

    seabed_row = {c: r for (r, c) in treasures}  # deepest open row per column

    def blocked(r: int, c: int) -> bool:
        return c in seabed_row and r > seabed_row[c]

    if blocked(*start):
        raise ValueError(f"{view.source}: start cell lies inside the seabed")

    n_states = rows * cols
    n_actions = len(_MOVES)
    next_state = np.zeros((n_states, n_actions), dtype=np.int64)
    rewards = np.zeros((n_states, n_actions, 2), dtype=np.float64)
    terminal = np.zeros(n_states, dtype=bool)
    for (r, c), _value in treasures.items():
        terminal[r * cols + c] = True
    for r in range(rows):
        for c in range(cols):
            s = r * cols + c
            for a, (dr, dc) in enumerate(_MOVES):
                nr, nc = r + dr, c + dc
                if not (0 <= nr < rows and 0 <= nc < cols) or blocked(nr, nc):
                    nr, nc = r, c
                next_state[s, a] = nr * cols + nc
                rewards[s, a, 0] = treasures.get((nr, nc), 0.0)
                rewards[s, a, 1] = -1.0

    dist = np.zeros(n_states)
    dist[start[0] * cols + start[1]] = 1.0
    spec = MomdpSpec(
        state_count=n_states,
        action_count=n_actions,
        objective_count=2,
        discount=view.get_float("discount"),
        max_episode_steps=view.get_int("max_episode_steps"),
        initial_state_distribution=dist,
    )
    return TabularMomdp(
        spec,
        next_state,
        rewards,
        terminal,
        name=view.get("name"),
        default_ref_point=view.get_floats("ref_point"),
        layout={
            "rows": rows,
            "cols": cols,
            "start": start,
            "treasures": {f"{r},{c}": v for (r, c), v in sorted(treasures.items())},
        },
        enumerable_outcomes=True,
    )


def build_minecart_grid(view: KeyValueView) -> TabularMomdp:
    """Two-mine delivery gridworld: objectives (ore A, ore B, -fuel).

    The cart starts empty at the depot. Driving onto a mine picks up one
    unit of that ore when empty; driving onto the depot delivers the cargo.
    Each attempted move burns one fuel unit (bumping a wall included); the
    dedicated stay action burns none. Episodes only end by truncation, so
    delivery rewards are delayed by a full mine round trip.
    """
    rows = view.get_int("rows")
    cols = view.get_int("cols")
    depot = view.get_cell("depot")
    mine_a = view.get_cell("mine_a")
    mine_b = view.get_cell("mine_b")
    capacity = view.get_int("cart_capacity", default="1")
    if capacity != 1:
        raise ValueError(f"{view.source}: only cart_capacity = 1 is supported")
    cells = {depot, mine_a, mine_b}
    if len(cells) != 3:
        raise ValueError(f"{view.source}: depot and mines must occupy distinct cells")
    for r, c in cells:
        if not (0 <= r < rows and 0 <= c < cols):
            raise ValueError(f"{view.source}: cell ({r}, {c}) outside the grid")

    n_cells = rows * cols
    cargo_kinds = 3  # 0 empty, 1 ore A, 2 ore B
    n_states = n_cells * cargo_kinds
    n_actions = len(_MOVES) + 1  # moves + stay
    stay = n_actions - 1

    def state_id(r: int, c: int, cargo: int) -> int:
        return (r * cols + c) * cargo_kinds + cargo

    mine_of = {mine_a: 1, mine_b: 2}
    next_state = np.zeros((n_states, n_actions), dtype=np.int64)
    rewards = np.zeros((n_states, n_actions, 3), dtype=np.float64)
    terminal = np.zeros(n_states, dtype=bool)
    for r in range(rows):
        for c in range(cols):
            for cargo in range(cargo_kinds):
                s = state_id(r, c, cargo)
                next_state[s, stay] = s
                for a, (dr, dc) in enumerate(_MOVES):
                    nr, nc = r + dr, c + dc
                    if not (0 <= nr < rows and 0 <= nc < cols):
                        nr, nc = r, c
                    new_cargo = cargo
                    reward = [0.0, 0.0, -1.0]
                    if (nr, nc) == depot and cargo != 0:
                        reward[cargo - 1] = 1.0
                        new_cargo = 0
                    elif (nr, nc) in mine_of and cargo == 0:
                        new_cargo = mine_of[(nr, nc)]
                    next_state[s, a] = state_id(nr, nc, new_cargo)
                    rewards[s, a] = reward

    dist = np.zeros(n_states)
    dist[state_id(depot[0], depot[1], 0)] = 1.0
    spec = MomdpSpec(
        state_count=n_states,
        action_count=n_actions,
        objective_count=3,
        discount=view.get_float("discount"),
        max_episode_steps=view.get_int("max_episode_steps"),
        initial_state_distribution=dist,
    )
    return TabularMomdp(
        spec,
        next_state,
        rewards,
        terminal,
        name=view.get("name"),
        default_ref_point=view.get_floats("ref_point"),
        layout={
            "rows": rows,
            "cols": cols,
            "depot": depot,
            "mine_a": mine_a,
            "mine_b": mine_b,
        },
        enumerable_outcomes=False,
    )
