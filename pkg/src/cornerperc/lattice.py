"""Edge-openness rules, parity classes, translations and averaging index sets.

The grid has one vertex per integer pair and edges between nearest
neighbors.  A configuration's line fields open edges by a parity rule: the
vertical edge {(x,y),(x,y+1)} is open exactly when the sign of column x
agrees with the parity of x+y (sign +1 opens the edges based at odd
vertices, sign -1 those based at even vertices), and symmetrically for
horizontal edges with the row field.  Every vertex then touches exactly
one open horizontal and one open vertical edge.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .fields import Axis

Vertex = tuple[int, int]

# canonical edge key: (base_x, base_y, direction), base = lower/left endpoint
Edge = tuple[int, int, str]


class Parity(Enum):
    EVEN = 0
    ODD = 1


def parity(v: Vertex) -> Parity:
    """Coordinate-sum parity of a vertex."""
    return Parity.EVEN if (v[0] + v[1]) % 2 == 0 else Parity.ODD


def vertical_edge_open(cfg, x: int, y: int) -> bool:
    """Open state of the vertical edge {(x,y),(x,y+1)}."""
    return (cfg.vertical_line(x) == 1) == ((x + y) & 1 == 1)


def horizontal_edge_open(cfg, x: int, y: int) -> bool:
    """Open state of the horizontal edge {(x,y),(x+1,y)}."""
    return (cfg.horizontal_line(y) == 1) == ((x + y) & 1 == 1)


def open_neighbors(cfg, v: Vertex) -> tuple[Vertex, Vertex]:
    """The unique horizontal and vertical open-edge neighbors of v.

    Existence and uniqueness are structural: along a row the open state
    alternates edge by edge, so exactly one of the two horizontal edges at
    v is open, and likewise vertically.
    """
    x, y = v
    h = (x + 1, y) if horizontal_edge_open(cfg, x, y) else (x - 1, y)
    w = (x, y + 1) if vertical_edge_open(cfg, x, y) else (x, y - 1)
    return h, w


def edge_between(u: Vertex, v: Vertex) -> Edge:
    """Canonical key of the edge joining two neighboring vertices."""
    (ux, uy), (vx, vy) = u, v
    if ux == vx and abs(uy - vy) == 1:
        return (ux, min(uy, vy), "V")
    if uy == vy and abs(ux - vx) == 1:
        return (min(ux, vx), uy, "H")
    raise ValueError(f"{u} and {v} are not nearest neighbors")


def edge_open(cfg, e: Edge) -> bool:
    x, y, d = e
    return vertical_edge_open(cfg, x, y) if d == "V" else horizontal_edge_open(cfg, x, y)


@dataclass(frozen=True)
class TranslatedFields:
    """Reindexing view whose open-edge set is the original's shifted by (dx, dy).

    Columns pick up the shift dx, rows dy; for odd |dx+dy| every line sign
    flips, which is exactly what keeps the parity rule pointing at the
    shifted edge set.  O(1), exact on the infinite lattice, and composable.
    """

    base: object
    dx: int
    dy: int
    sign: int

    def vertical_line(self, i: int) -> int:
        return self.sign * self.base.vertical_line(i - self.dx)

    def horizontal_line(self, j: int) -> int:
        return self.sign * self.base.horizontal_line(j - self.dy)

    def line_value(self, axis: Axis, index: int) -> int:
        return self.vertical_line(index) if axis is Axis.VERTICAL else self.horizontal_line(index)

    def line_values(self, axis: Axis, start: int, stop: int) -> np.ndarray:
        shift = self.dx if axis is Axis.VERTICAL else self.dy
        return self.sign * self.base.line_values(axis, start - shift, stop - shift)


def translate_fields(cfg, v: Vertex) -> TranslatedFields:
    """View of cfg with every open edge shifted by v."""
    dx, dy = v
    sign = 1 if (dx + dy) % 2 == 0 else -1
    return TranslatedFields(cfg, dx, dy, sign)


def diamond_map(v: Vertex) -> Vertex:
    """The bijection (x, y) -> (x - y, x + y) from the grid onto its even sublattice."""
    x, y = v
    return (x - y, x + y)


def diamond_points(n: int) -> list[Vertex]:
    """Image of the square [-n, n]^2 under :func:`diamond_map`: the even diamond.

    These (2n+1)^2 even vertices are the index set used for spatial ergodic
    averages.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    return [(a - b, a + b) for a in range(-n, n + 1) for b in range(-n, n + 1)]


def open_edges_in_window(cfg, n: int) -> set[Edge]:
    """Canonical keys of all open edges with both endpoints in [-n, n]^2."""
    edges: set[Edge] = set()
    for x in range(-n, n + 1):
        for y in range(-n, n + 1):
            if x < n and horizontal_edge_open(cfg, x, y):
                edges.add((x, y, "H"))
            if y < n and vertical_edge_open(cfg, x, y):
                edges.add((x, y, "V"))
    return edges


def reflect_edges_x(edges: set[Edge]) -> set[Edge]:
    """Mirror an edge set across the x-axis, keeping canonical keys."""
    out: set[Edge] = set()
    for x, y, d in edges:
        if d == "H":
            out.add((x, -y, "H"))
        else:
            out.add((x, -y - 1, "V"))
    return out


def degree_profile(cfg, n: int) -> bool:
    """Exhaustively check the one-horizontal/one-vertical degree rule on [-n, n]^2.

    Vectorized: builds the open/closed grid of all edges touching the
    window and verifies adjacent edges along every row and column strictly
    alternate, which is equivalent to each vertex having exactly one open
    edge of each orientation.
    """
    xs = np.arange(-n, n + 1, dtype=np.int64)
    cols = cfg.line_values(Axis.VERTICAL, -n, n + 1)
    rows = cfg.line_values(Axis.HORIZONTAL, -n, n + 1)
    # vertical edges based at (x, y) for y in [-n-1, n]
    ybase = np.arange(-n - 1, n + 1, dtype=np.int64)
    odd_v = ((xs[:, None] + ybase[None, :]) & 1) == 1
    open_v = (cols[:, None] == 1) == odd_v
    # horizontal edges based at (x, y) for x in [-n-1, n]
    xbase = np.arange(-n - 1, n + 1, dtype=np.int64)
    ys = np.arange(-n, n + 1, dtype=np.int64)
    odd_h = ((xbase[:, None] + ys[None, :]) & 1) == 1
    open_h = (rows[None, :] == 1) == odd_h
    vertical_ok = np.all(open_v[:, :-1] != open_v[:, 1:])
    horizontal_ok = np.all(open_h[:-1, :] != open_h[1:, :])
    return bool(vertical_ok and horizontal_ok)
