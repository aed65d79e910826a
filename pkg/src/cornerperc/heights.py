"""Face heights from the two line-field random walks, plus a crossing oracle.

Faces are unit squares addressed by their lower-left corner (n, m) and
colored like a chessboard: black when n+m is even.  Anchoring the face
(0, 0) at height zero, crossing an open edge from a black face into a
white one raises the height by one and the reverse crossing lowers it;
closed edges do not change it.  The closed form used everywhere is
ceil((X_n + Y_m) / 2) where X and Y are the two-sided prefix-sum walks of
the column and row fields.  ``crossing_height`` recomputes heights
directly from the crossing rule and serves as the independent check of
that formula.
"""

from __future__ import annotations

import numpy as np

from .fields import Axis
from .lattice import horizontal_edge_open, vertical_edge_open


def ceil_half(s: int) -> int:
    """Mathematical ceiling of s/2 (so ceil_half(-3) == -1, not 0)."""
    return (s + 1) // 2


class HeightOracle:
    """Lazy two-sided prefix sums of the line fields with face-height queries.

    The walks satisfy X_0 = 0 and X_n - X_{n-1} = column sign at n for
    every n, positive or negative (and the same for Y with row signs).
    Ranges are extended on demand and cached; query order never affects
    values.  The cache is not synchronized: confine one oracle to one
    worker (two oracles over the same configuration agree anyway).
    """

    def __init__(self, cfg):
        self.cfg = cfg
        # pos[k] = walk at +k, neg[k] = walk at -k; index 0 shared
        self._xpos: list[int] = [0]
        self._xneg: list[int] = [0]
        self._ypos: list[int] = [0]
        self._yneg: list[int] = [0]

    def _extend(self, pos: list[int], neg: list[int], axis: Axis, n: int) -> None:
        if n >= len(pos):
            vals = self.cfg.line_values(axis, len(pos), n + 1)
            pos.extend((pos[-1] + np.cumsum(vals)).tolist())
        elif -n >= len(neg):
            t = -n
            k0 = len(neg) - 1
            vals = self.cfg.line_values(axis, -t + 1, -k0 + 1)[::-1]
            neg.extend((neg[-1] - np.cumsum(vals)).tolist())

    def column_walk(self, n: int) -> int:
        """Prefix-sum walk of the vertical-line signs, at index n."""
        self._extend(self._xpos, self._xneg, Axis.VERTICAL, n)
        return self._xpos[n] if n >= 0 else self._xneg[-n]

    def row_walk(self, m: int) -> int:
        """Prefix-sum walk of the horizontal-line signs, at index m."""
        self._extend(self._ypos, self._yneg, Axis.HORIZONTAL, m)
        return self._ypos[m] if m >= 0 else self._yneg[-m]

    def column_walk_range(self, lo: int, hi: int) -> np.ndarray:
        """Walk values for all indices lo..hi as an int64 array."""
        self.column_walk(lo)
        self.column_walk(hi)
        return _range_from_lists(self._xpos, self._xneg, lo, hi)

    def row_walk_range(self, lo: int, hi: int) -> np.ndarray:
        self.row_walk(lo)
        self.row_walk(hi)
        return _range_from_lists(self._ypos, self._yneg, lo, hi)

    def height(self, n: int, m: int) -> int:
        """Height of the face with lower-left corner (n, m)."""
        return ceil_half(self.column_walk(n) + self.row_walk(m))


def _range_from_lists(pos: list[int], neg: list[int], lo: int, hi: int) -> np.ndarray:
    if lo >= 0:
        return np.array(pos[lo : hi + 1], dtype=np.int64)
    left = neg[1 : -lo + 1][::-1]
    if hi < 0:
        return np.array(neg[-hi : -lo + 1][::-1], dtype=np.int64)
    return np.array(left + pos[: hi + 1], dtype=np.int64)


def face_is_black(n: int, m: int) -> bool:
    return (n + m) % 2 == 0


def crossing_height(cfg, n: int, m: int, row_first: bool = False) -> int:
    """Height of face (n, m) computed by walking the dual lattice from (0, 0).

    Follows an L-shaped path, columns leg then rows leg (or the other way
    around with ``row_first``), adding one when an open edge is crossed
    out of a black face, subtracting one when crossed out of a white face,
    and ignoring closed edges.  Independent of the walk-based formula by
    construction: it touches only the edge-openness rules.
    """
    a, b = 0, 0
    h = 0

    def cross_column_step(a: int, b: int, east: bool) -> int:
        # edge between faces (a,b) and (a+-1,b) sits on the column x = a (+1 if east)
        bx = a + 1 if east else a
        if not vertical_edge_open(cfg, bx, b):
            return 0
        return 1 if face_is_black(a, b) else -1

    def cross_row_step(a: int, b: int, north: bool) -> int:
        by = b + 1 if north else b
        if not horizontal_edge_open(cfg, a, by):
            return 0
        return 1 if face_is_black(a, b) else -1

    def run_columns(a: int, b: int, h: int) -> tuple[int, int]:
        while a != n:
            east = n > a
            h += cross_column_step(a, b, east)
            a += 1 if east else -1
        return a, h

    def run_rows(a: int, b: int, h: int) -> tuple[int, int]:
        while b != m:
            north = m > b
            h += cross_row_step(a, b, north)
            b += 1 if north else -1
        return b, h

    if row_first:
        b, h = run_rows(a, b, h)
        a, h = run_columns(a, b, h)
    else:
        a, h = run_columns(a, b, h)
        b, h = run_rows(a, b, h)
    return h
