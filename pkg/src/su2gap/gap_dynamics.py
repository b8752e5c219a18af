"""Dynamics of the induced plane map and word-map orbits of pairs.

The map phi(x, t) = (x^2 - 2, x^2 (t - 2) + 2) acts on the domain D.  Its
restriction to the t-axis endpoint sequence t -> t^2 - 2 is the degree-2
Chebyshev map; every start below 2 eventually falls below 0, which is the
escape behaviour recorded here.  Word-map orbits track how far a single pair
spreads through D under elementary moves.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .su2_core import Pair, inverse, multiply
from .trace_geometry import FrickeCoord, pi_map

DEFAULT_MAX_STEPS = 64
ORBIT_DEDUP_GRID = 1e-6


@dataclass(frozen=True)
class EscapeRecord:
    """Orbit of t under t -> t^2 - 2 up to the first negative value.

    steps_to_negative is the index of the first orbit entry below 0, or
    None when max_steps iterations never produced one ("not-reached";
    only the fixed point t0 = 2 behaves this way on [-2, 2]).
    """

    t0: float
    orbit: tuple[float, ...]
    steps_to_negative: int | None


def iterate_phi_endpoint(t0: float, max_steps: int = DEFAULT_MAX_STEPS) -> EscapeRecord:
    """Iterate t -> t^2 - 2 from t0 until the value is strictly negative.

    A value of exactly 0 keeps iterating (it maps to -2 next step).
    """
    t0 = float(t0)
    if not -2.0 <= t0 <= 2.0:
        raise ValueError(f"t0 = {t0!r} must lie in [-2, 2]")
    if max_steps < 1:
        raise ValueError("max_steps must be at least 1")
    orbit = [t0]
    steps = 0 if t0 < 0.0 else None
    while steps is None and len(orbit) - 1 < max_steps:
        nxt = orbit[-1] * orbit[-1] - 2.0
        orbit.append(nxt)
        if nxt < 0.0:
            steps = len(orbit) - 1
    return EscapeRecord(t0, tuple(orbit), steps)


def fiber_image_interval(t: float) -> tuple[float, float]:
    """Projection onto the t-axis of phi applied to the fiber over t.

    The fiber is {(x, t) : x^2 <= t + 2}; its image projects to exactly
    [t^2 - 2, 2].
    """
    t = float(t)
    if not -2.0 <= t <= 2.0:
        raise ValueError(f"t = {t!r} must lie in [-2, 2]")
    return (t * t - 2.0, 2.0)


def fiber_image_numeric(t: float, grid_points: int) -> tuple[float, float]:
    """Endpoints of the fiber image computed by evaluating phi on a grid.

    Matches fiber_image_interval up to the grid resolution; the lower
    endpoint is exact because the grid contains x = +-sqrt(t + 2).
    """
    t = float(t)
    if not -2.0 <= t <= 2.0:
        raise ValueError(f"t = {t!r} must lie in [-2, 2]")
    if grid_points < 2:
        raise ValueError("grid_points must be at least 2")
    half_width = math.sqrt(max(t + 2.0, 0.0))
    xs = np.linspace(-half_width, half_width, grid_points)
    second = xs * xs * (t - 2.0) + 2.0
    return (float(second.min()), float(second.max()))


class Move(Enum):
    """Elementary word-map moves on a pair (a, b)."""

    SQUARE_FIRST = "S"
    SWAP_GENERATORS = "X"
    INVERT_FIRST = "I"
    MULTIPLY_FIRST_BY_SECOND = "M"


MOVES = tuple(Move)


def apply_move(pair: Pair, move: Move) -> Pair:
    """Apply one move; every image lies in the subgroup generated by the pair."""
    a, b = pair
    if move is Move.SQUARE_FIRST:
        return Pair(multiply(a, a), b)
    if move is Move.SWAP_GENERATORS:
        return Pair(b, a)
    if move is Move.INVERT_FIRST:
        return Pair(inverse(a), b)
    if move is Move.MULTIPLY_FIRST_BY_SECOND:
        return Pair(multiply(a, b), b)
    raise ValueError(f"unknown move {move!r}")


@dataclass(frozen=True)
class OrbitPoint:
    """A pair in a word-map orbit together with its Fricke coordinate and
    the move path that produced it."""

    pair: Pair
    coord: FrickeCoord
    path: tuple[str, ...]


def _dedup_key(coord: FrickeCoord) -> tuple[int, int]:
    return (round(coord.x / ORBIT_DEDUP_GRID), round(coord.t / ORBIT_DEDUP_GRID))


def wordmap_orbit(pair: Pair, depth: int, max_points: int = 10000) -> list[OrbitPoint]:
    """Breadth-first closure of a pair under the four moves.

    Points are deduplicated by rounding Fricke coordinates to the 1e-6 grid
    (coordinates, not matrices, are what the downstream analysis consumes).
    Expansion order is deterministic: moves in declaration order, frontier
    in insertion order.
    """
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    if max_points < 1:
        raise ValueError("max_points must be at least 1")
    root = OrbitPoint(pair, pi_map(pair), ())
    seen = {_dedup_key(root.coord)}
    points = [root]
    frontier = [root]
    for _ in range(depth):
        next_frontier: list[OrbitPoint] = []
        for point in frontier:
            for move in MOVES:
                if len(points) >= max_points:
                    return points
                image = apply_move(point.pair, move)
                coord = pi_map(image)
                key = _dedup_key(coord)
                if key in seen:
                    continue
                seen.add(key)
                orbit_point = OrbitPoint(image, coord, point.path + (move.value,))
                points.append(orbit_point)
                next_frontier.append(orbit_point)
        if not next_frontier:
            break
        frontier = next_frontier
    return points
