"""Height-map images: faces colored by height modulo eight, written as binary PPM.

The palette is fixed so that renders are stable snapshot artifacts; a
configuration plus a window half-width determines the image byte for byte.
"""

from __future__ import annotations

import numpy as np

from .heights import HeightOracle

MAX_WINDOW = 4096

# height mod 8 -> RGB; repeating bands make the staircase terraces visible
PALETTE: tuple[tuple[int, int, int], ...] = (
    (230, 25, 75),
    (245, 130, 48),
    (255, 225, 25),
    (60, 180, 75),
    (70, 240, 240),
    (0, 130, 200),
    (145, 30, 180),
    (240, 50, 230),
)

_PALETTE_ARRAY = np.array(PALETTE, dtype=np.uint8)


def height_grid(cfg, window: int) -> np.ndarray:
    """Heights of all faces with corners in [-window, window]^2.

    Returned as H[m + window, n + window] for face (n, m): row index grows
    with m, column index with n.
    """
    if window < 1:
        raise ValueError("window must be >= 1")
    oracle = HeightOracle(cfg)
    cols = oracle.column_walk_range(-window, window)
    rows = oracle.row_walk_range(-window, window)
    s = rows[:, None] + cols[None, :]
    return (s + 1) // 2


def render_ppm(cfg, window: int) -> bytes:
    """Binary PPM (P6) with one pixel per face.

    Pixel (column c, row r) shows face (c - window, window - r): row zero
    sits at the top of the picture, color = PALETTE[height mod 8].
    """
    if window > MAX_WINDOW:
        raise ValueError(f"window must be <= {MAX_WINDOW}")
    h = height_grid(cfg, window)
    img = _PALETTE_ARRAY[np.flipud(h) % 8]
    side = 2 * window + 1
    header = f"P6\n{side} {side}\n255\n".encode("ascii")
    return header + img.tobytes()


def write_ppm(path: str, data: bytes) -> None:
    with open(path, "wb") as fh:
        fh.write(data)
