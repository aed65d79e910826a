"""Follow the degree-two component of a vertex and read off its geometry.

Every vertex has exactly one open horizontal and one open vertical edge,
so components are simple cycles or bi-infinite paths and following them
needs no visited set: leave along one open edge, and at each vertex take
the open edge you did not arrive on.  The component of a start vertex is
oriented by taking the horizontal open edge first; the backward half
starts along the vertical one.  Returning to the start closes a cycle;
exceeding the escape radius (sup-norm displacement from the start) is the
finite-window stand-in for heading off to infinity.
"""

from __future__ import annotations

import math
from array import array
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .fields import MASK64, Configuration
from .heights import HeightOracle, face_is_black
from .lattice import Vertex

try:
    from numba import njit

    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only on minimal installs
    _HAVE_NUMBA = False

    def njit(*args, **kwargs):
        def wrap(fn):
            return fn

        return wrap


class TraceStatus(Enum):
    CYCLE = "cycle"
    ESCAPED = "escaped"
    TRUNCATED = "truncated"


@dataclass
class Trace:
    """Oriented component of ``start``: forward and backward vertex runs.

    ``forward[k]`` is the k-th vertex walking out along the horizontal
    edge; ``backward[k]`` the k-th walking out along the vertical edge
    (both include the start at index 0).  For cycles the backward run is
    the forward cycle reversed.
    """

    start: Vertex
    forward: np.ndarray
    backward: np.ndarray
    forward_status: TraceStatus
    backward_status: TraceStatus
    escape_radius: int
    max_steps: int
    cycle_length: int | None = None

    @property
    def status(self) -> TraceStatus:
        """Combined view: a cycle, escaped on both sides, or truncated."""
        if self.cycle_length is not None:
            return TraceStatus.CYCLE
        if (
            self.forward_status is TraceStatus.ESCAPED
            and self.backward_status is TraceStatus.ESCAPED
        ):
            return TraceStatus.ESCAPED
        return TraceStatus.TRUNCATED

    @property
    def forward_steps(self) -> int:
        return len(self.forward) - 1

    @property
    def backward_steps(self) -> int:
        return len(self.backward) - 1

    def escaped(self, side: str = "both") -> bool:
        if side == "forward":
            return self.forward_status is TraceStatus.ESCAPED
        if side == "backward":
            return self.backward_status is TraceStatus.ESCAPED
        if side == "both":
            return (
                self.forward_status is TraceStatus.ESCAPED
                and self.backward_status is TraceStatus.ESCAPED
            )
        raise ValueError(f"side must be forward/backward/both, not {side!r}")

    def max_displacement(self) -> int:
        """Largest sup-norm displacement from the start over both runs."""
        x0, y0 = self.start
        d = 0
        for arr in (self.forward, self.backward):
            if len(arr) > 1:
                dx = int(np.max(np.abs(arr[:, 0] - x0)))
                dy = int(np.max(np.abs(arr[:, 1] - y0)))
                d = max(d, dx, dy)
        return d


_CYCLE, _ESCAPED, _TRUNCATED = 0, 1, 2
_STATUS_FROM_CODE = {
    _CYCLE: TraceStatus.CYCLE,
    _ESCAPED: TraceStatus.ESCAPED,
    _TRUNCATED: TraceStatus.TRUNCATED,
}


@njit(cache=True)
def _jit_line_sign(index, key, thr):
    if index >= 0:
        z = np.uint64(2 * index)
    else:
        z = np.uint64(-2 * index - 1)
    z ^= z >> np.uint64(30)
    z *= np.uint64(0xBF58476D1CE4E5B9)
    z ^= z >> np.uint64(27)
    z *= np.uint64(0x94D049BB133111EB)
    z ^= z >> np.uint64(31)
    z ^= key
    z ^= z >> np.uint64(30)
    z *= np.uint64(0xBF58476D1CE4E5B9)
    z ^= z >> np.uint64(27)
    z *= np.uint64(0x94D049BB133111EB)
    z ^= z >> np.uint64(31)
    return 1 if z < thr else -1


@njit(cache=True)
def _jit_follow(x0, y0, horizontal_first, max_steps, escape_radius, vkey, hkey, vthr, hthr):
    verts = np.empty((max_steps + 1, 2), dtype=np.int64)
    verts[0, 0] = x0
    verts[0, 1] = y0
    x, y = x0, y0
    horizontal = horizontal_first
    status = _TRUNCATED
    steps = 0
    while steps < max_steps:
        if horizontal:
            hv = _jit_line_sign(y, hkey, hthr)
            if (x + y) & 1:
                x += hv
            else:
                x -= hv
        else:
            vv = _jit_line_sign(x, vkey, vthr)
            if (x + y) & 1:
                y += vv
            else:
                y -= vv
        horizontal = not horizontal
        steps += 1
        verts[steps, 0] = x
        verts[steps, 1] = y
        if x == x0 and y == y0:
            status = _CYCLE
            break
        dx = x - x0
        dy = y - y0
        if dx > escape_radius or -dx > escape_radius or dy > escape_radius or -dy > escape_radius:
            status = _ESCAPED
            break
    return verts[: steps + 1].copy(), status


def _follow_python(cfg, x0: int, y0: int, horizontal_first: bool, max_steps: int, escape_radius: int):
    vline = cfg.vertical_line
    hline = cfg.horizontal_line
    vcache: dict[int, int] = {}
    hcache: dict[int, int] = {}
    xs = array("q", [x0])
    ys = array("q", [y0])
    x, y = x0, y0
    horizontal = horizontal_first
    status = _TRUNCATED
    steps = 0
    while steps < max_steps:
        if horizontal:
            hv = hcache.get(y)
            if hv is None:
                hv = hline(y)
                hcache[y] = hv
            if (x + y) & 1:
                x += hv
            else:
                x -= hv
        else:
            vv = vcache.get(x)
            if vv is None:
                vv = vline(x)
                vcache[x] = vv
            if (x + y) & 1:
                y += vv
            else:
                y -= vv
        horizontal = not horizontal
        steps += 1
        xs.append(x)
        ys.append(y)
        if x == x0 and y == y0:
            status = _CYCLE
            break
        dx = x - x0
        dy = y - y0
        if dx > escape_radius or -dx > escape_radius or dy > escape_radius or -dy > escape_radius:
            status = _ESCAPED
            break
    verts = np.column_stack(
        (np.frombuffer(xs, dtype=np.int64), np.frombuffer(ys, dtype=np.int64))
    )
    return verts, status


def _follow(cfg, x0: int, y0: int, horizontal_first: bool, max_steps: int, escape_radius: int):
    # jit fast path for plain i.i.d. configurations; everything else (explicit
    # fields, Markov chains, translated views) goes through the generic loop
    if (
        _HAVE_NUMBA
        and type(cfg) is Configuration
        and cfg._iid
        and 0 < cfg._vthr <= MASK64
        and 0 < cfg._hthr <= MASK64
    ):
        verts, code = _jit_follow(
            x0,
            y0,
            horizontal_first,
            max_steps,
            escape_radius,
            np.uint64(cfg._vkey),
            np.uint64(cfg._hkey),
            np.uint64(cfg._vthr),
            np.uint64(cfg._hthr),
        )
        return verts, _STATUS_FROM_CODE[code]
    verts, code = _follow_python(cfg, x0, y0, horizontal_first, max_steps, escape_radius)
    return verts, _STATUS_FROM_CODE[code]


def trace(cfg, start: Vertex = (0, 0), max_steps: int = 1_000_000, escape_radius: int = 1000) -> Trace:
    """Trace the oriented component of ``start``.

    The forward run leaves along the open horizontal edge and stops on the
    first of: return to the start (cycle), sup-norm displacement exceeding
    ``escape_radius``, or ``max_steps`` edges.  Unless a cycle closed, the
    backward run does the same starting along the vertical edge.
    """
    if max_steps < 1 or escape_radius < 1:
        raise ValueError("max_steps and escape_radius must be >= 1")
    x0, y0 = start
    fwd, fwd_status = _follow(cfg, x0, y0, True, max_steps, escape_radius)
    if fwd_status is TraceStatus.CYCLE:
        return Trace(
            start=start,
            forward=fwd,
            backward=fwd[::-1].copy(),
            forward_status=TraceStatus.CYCLE,
            backward_status=TraceStatus.CYCLE,
            escape_radius=escape_radius,
            max_steps=max_steps,
            cycle_length=len(fwd) - 1,
        )
    bwd, bwd_status = _follow(cfg, x0, y0, False, max_steps, escape_radius)
    cycle_length = len(bwd) - 1 if bwd_status is TraceStatus.CYCLE else None
    return Trace(
        start=start,
        forward=fwd,
        backward=bwd,
        forward_status=fwd_status,
        backward_status=bwd_status,
        escape_radius=escape_radius,
        max_steps=max_steps,
        cycle_length=cycle_length,
    )


def black_face_of_first_edge(t: Trace) -> tuple[int, int]:
    """The black face adjacent to the first (horizontal) traced edge."""
    if len(t.forward) < 2:
        raise ValueError("trace has no edges")
    (x0, y0), (x1, _) = map(tuple, t.forward[:2])
    bx = min(x0, x1)
    by = y0
    return (bx, by) if face_is_black(bx, by) else (bx, by - 1)


def level(oracle: HeightOracle, t: Trace) -> int:
    """Level of a traced component: height of the black face along it.

    All black faces bordering one component share a height, so the black
    face next to the first edge represents the whole component.
    """
    n, m = black_face_of_first_edge(t)
    return oracle.height(n, m)


def sign_sequence(t: Trace, count: int) -> list[int]:
    """Signs of the first ``count`` forward edges.

    A horizontal edge's sign is minus its x-displacement (+1 means a step
    west); a vertical edge's sign is its y-displacement (+1 means north).
    Cycles repeat periodically, so any count is available; on open runs
    the trace must be long enough.
    """
    if count < 0:
        raise ValueError("count must be >= 0")
    diffs = np.diff(t.forward, axis=0)
    n_edges = len(diffs)
    signs: list[int] = []
    for k in range(count):
        if t.cycle_length is not None:
            d = diffs[k % t.cycle_length]
        else:
            if k >= n_edges:
                raise ValueError(f"trace has {n_edges} edges, needs {count}")
            d = diffs[k]
        signs.append(int(-d[0]) if k % 2 == 0 else int(d[1]))
    return signs


def slope_formula(p: float, q: float) -> float:
    """Asymptotic slope of the infinite paths: (2q-1)/(1-2p), vertical when p = 1/2.

    Undefined at the symmetric point (1/2, 1/2), where all components are
    finite cycles.
    """
    if p == 0.5 and q == 0.5:
        raise ValueError("slope is undefined at (p, q) = (1/2, 1/2)")
    if p == 0.5:
        return math.inf
    return (2.0 * q - 1.0) / (1.0 - 2.0 * p)


@dataclass(frozen=True)
class ConeSpec:
    """Double cone of lattice directions nearly orthogonal to the height gradient.

    The face heights grow along the gradient direction (2q-1, 2p-1); the
    column walk drifts at rate 2q-1 and the row walk at 2p-1.  Components
    hug level lines of the height, so their directions are the ones whose
    unit vector has inner product at most epsilon with the unit gradient,
    in absolute value.  The cone straddles the asymptotic-slope line
    y = (2q-1)/(1-2p) x symmetrically, and stands vertical when p = 1/2.
    """

    ux: float
    uy: float
    theta: float
    epsilon: float


def cone_spec(p: float, q: float, epsilon: float) -> ConeSpec:
    gx = 2.0 * q - 1.0
    gy = 2.0 * p - 1.0
    r = math.hypot(gx, gy)
    if r == 0.0:
        raise ValueError("cone is undefined at (p, q) = (1/2, 1/2)")
    if epsilon <= 0.0:
        raise ValueError("epsilon must be > 0")
    theta = math.atan2(gy, gx)
    if theta < 0.0:
        theta += 2.0 * math.pi
    return ConeSpec(ux=gx / r, uy=gy / r, theta=theta, epsilon=epsilon)


def in_cone(spec: ConeSpec, v: Vertex) -> bool:
    x, y = v
    r = math.hypot(x, y)
    if r == 0.0:
        raise ValueError("cone membership is undefined at the origin")
    # |<v/|v|, u>| clamped against float drift so epsilon >= 1 always passes
    c = max(-1.0, min(1.0, (x * spec.ux + y * spec.uy) / r))
    return abs(c) <= spec.epsilon


def cone_violations(spec: ConeSpec, verts: np.ndarray) -> np.ndarray:
    """Euclidean norms of the vertices falling outside the cone (origin skipped)."""
    v = np.asarray(verts, dtype=np.float64)
    r = np.hypot(v[:, 0], v[:, 1])
    nz = r > 0
    ip = np.abs(v[:, 0] * spec.ux + v[:, 1] * spec.uy)
    bad = nz & (ip > spec.epsilon * r)
    return r[bad]


@dataclass(frozen=True)
class DirectionEstimate:
    unit_forward: tuple[float, float]
    unit_backward: tuple[float, float]
    slope: float


def direction_estimate(t: Trace, min_steps: int = 1000) -> DirectionEstimate:
    """Empirical direction of an open trace from its endpoint displacements.

    Cycles have no direction.  Each side must have escaped or run at least
    ``min_steps`` edges for the estimate to mean anything.
    """
    if t.status is TraceStatus.CYCLE:
        raise ValueError("cycles have no asymptotic direction")
    for status, steps, name in (
        (t.forward_status, t.forward_steps, "forward"),
        (t.backward_status, t.backward_steps, "backward"),
    ):
        if status is not TraceStatus.ESCAPED and steps < min_steps:
            raise ValueError(f"{name} run too short: {steps} steps and not escaped")
    x0, y0 = t.start

    def unit(arr: np.ndarray) -> tuple[float, float]:
        dx = float(arr[-1, 0] - x0)
        dy = float(arr[-1, 1] - y0)
        r = math.hypot(dx, dy)
        return (dx / r, dy / r)

    dx = float(t.forward[-1, 0] - x0)
    dy = float(t.forward[-1, 1] - y0)
    slope = math.inf if dx == 0.0 else dy / dx
    return DirectionEstimate(unit(t.forward), unit(t.backward), slope)
