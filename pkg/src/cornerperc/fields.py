"""Deterministic +-1 line fields over the whole integer line.

A corner percolation configuration is parameterized by two bi-infinite sign
sequences: one sign per vertical line (column) and one per horizontal line
(row).  Instead of drawing the sequences ahead of time, each line value is
the output of a counter-based hash of its index, so any line of the
infinite lattice is available in O(1) and every query is reproducible
bit-for-bit from ``(seed, params, generator)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15
_MIX_MUL_1 = 0xBF58476D1CE4E5B9
_MIX_MUL_2 = 0x94D049BB133111EB


class Axis(Enum):
    """Which family of lines a query addresses.

    The enum value doubles as the domain-separation tag fed to the hash, so
    the two axes draw from disjoint streams of the same seed.
    """

    VERTICAL = 1
    HORIZONTAL = 2


def zigzag(i: int) -> int:
    """Fold a signed index into an unsigned one: 0,-1,1,-2,2,... -> 0,1,2,3,4,..."""
    i = int(i)  # tolerate numpy integer scalars
    return 2 * i if i >= 0 else -2 * i - 1


def zigzag_array(idx: np.ndarray) -> np.ndarray:
    idx = np.asarray(idx, dtype=np.int64)
    return np.where(idx >= 0, 2 * idx, -2 * idx - 1).astype(np.uint64)


def mix64(z: int) -> int:
    """SplitMix64 finalizer; a bijective scramble of a 64-bit word."""
    z = int(z) & MASK64
    z ^= z >> 30
    z = (z * _MIX_MUL_1) & MASK64
    z ^= z >> 27
    z = (z * _MIX_MUL_2) & MASK64
    return z ^ (z >> 31)


def mix64_array(z: np.ndarray) -> np.ndarray:
    """Vectorized :func:`mix64` on uint64 arrays (wrapping multiplies)."""
    z = z ^ (z >> np.uint64(30))
    z = z * np.uint64(_MIX_MUL_1)
    z = z ^ (z >> np.uint64(27))
    z = z * np.uint64(_MIX_MUL_2)
    return z ^ (z >> np.uint64(31))


def sign_threshold(prob: float) -> int:
    """Cutoff t such that a uniform u on [0, 2^64) maps to +1 iff u < t.

    floor(prob * 2^64) breaks ties toward -1, which keeps independent
    implementations bit-for-bit compatible.  Multiplying a float by 2^64 is
    exact (pure exponent shift), so the floor is well defined.
    """
    return math.floor(prob * 2.0**64)


@dataclass(frozen=True)
class Params:
    """Preferential-direction probabilities (p, q).

    p is the +1 probability of horizontal lines, q of vertical lines.  The
    model proper lives on the open square 0 < p, q < 1; the closed boundary
    is accepted so degenerate all-one / all-minus-one fields remain
    constructible for worked examples.
    """

    p: float
    q: float

    def __post_init__(self) -> None:
        if not (0.0 <= self.p <= 1.0) or not (0.0 <= self.q <= 1.0):
            raise ValueError(f"p and q must lie in [0, 1], got p={self.p}, q={self.q}")


class GeneratorKind(Enum):
    IID = "iid"
    MARKOV = "markov"


@dataclass(frozen=True)
class MarkovSpec:
    """Two-state chain on {-1,+1}: flip_up = P(-1 -> +1), flip_down = P(+1 -> -1)."""

    flip_up: float
    flip_down: float

    def __post_init__(self) -> None:
        if not (0.0 < self.flip_up < 1.0) or not (0.0 < self.flip_down < 1.0):
            raise ValueError("flip probabilities must lie strictly inside (0, 1)")

    @property
    def stationary_up(self) -> float:
        """Stationary probability of +1."""
        return self.flip_up / (self.flip_up + self.flip_down)


@dataclass(frozen=True)
class GeneratorSpec:
    """How each line sequence is drawn: i.i.d. signs or a stationary two-state chain."""

    kind: GeneratorKind = GeneratorKind.IID
    vertical: MarkovSpec | None = None
    horizontal: MarkovSpec | None = None

    def __post_init__(self) -> None:
        if self.kind is GeneratorKind.MARKOV:
            if self.vertical is None or self.horizontal is None:
                raise ValueError("Markov generator needs a chain spec for both axes")

    @staticmethod
    def iid() -> "GeneratorSpec":
        return GeneratorSpec(GeneratorKind.IID)

    @staticmethod
    def markov(flip_up: float, flip_down: float) -> "GeneratorSpec":
        """Same chain on both axes (the CLI's --flip-up/--flip-down form)."""
        chain = MarkovSpec(flip_up, flip_down)
        return GeneratorSpec(GeneratorKind.MARKOV, vertical=chain, horizontal=chain)


class Configuration:
    """A full random environment: pure function from line index to a sign.

    For the i.i.d. generator, line i of axis a has the value::

        u = mix64(mix64(zigzag(i)) ^ seed ^ a.value * GOLDEN_GAMMA)
        value = +1  iff  u < floor(prob * 2^64)

    with prob = q on the vertical axis and p on the horizontal axis.  For
    the Markov generator, index 0 is drawn from the stationary law and the
    chain is extended outward in both directions with the transition
    kernel, each step consuming the per-index uniform u; two-state
    stationary chains are reversible, so the leftward extension uses the
    same kernel.

    Queries are memoized but pure: any sequence of queries in any order
    yields the same field.
    """

    def __init__(self, seed: int, params: Params, gen: GeneratorSpec | None = None):
        self.seed = seed
        self.params = params
        self.gen = gen if gen is not None else GeneratorSpec.iid()
        self._vkey = (seed & MASK64) ^ ((Axis.VERTICAL.value * GOLDEN_GAMMA) & MASK64)
        self._hkey = (seed & MASK64) ^ ((Axis.HORIZONTAL.value * GOLDEN_GAMMA) & MASK64)
        self._iid = self.gen.kind is GeneratorKind.IID
        if self._iid:
            self._vthr = sign_threshold(params.q)
            self._hthr = sign_threshold(params.p)
            self._vcache: dict[int, int] = {}
            self._hcache: dict[int, int] = {}
        else:
            # two-sided value lists: pos[k] = value at k, neg[k] = value at -k
            self._vchain = self._seed_chain(self.gen.vertical, self._vkey)
            self._hchain = self._seed_chain(self.gen.horizontal, self._hkey)

    def __repr__(self) -> str:
        return f"Configuration(seed={self.seed}, params={self.params}, gen={self.gen.kind.value})"

    # -- scalar queries ----------------------------------------------------

    def vertical_line(self, i: int) -> int:
        """Sign of vertical line (column) i."""
        if self._iid:
            v = self._vcache.get(i)
            if v is None:
                u = mix64(mix64(zigzag(i)) ^ self._vkey)
                v = 1 if u < self._vthr else -1
                self._vcache[i] = v
            return v
        return self._chain_value(self._vchain, self.gen.vertical, self._vkey, i)

    def horizontal_line(self, j: int) -> int:
        """Sign of horizontal line (row) j."""
        if self._iid:
            v = self._hcache.get(j)
            if v is None:
                u = mix64(mix64(zigzag(j)) ^ self._hkey)
                v = 1 if u < self._hthr else -1
                self._hcache[j] = v
            return v
        return self._chain_value(self._hchain, self.gen.horizontal, self._hkey, j)

    def line_value(self, axis: Axis, index: int) -> int:
        if axis is Axis.VERTICAL:
            return self.vertical_line(index)
        return self.horizontal_line(index)

    # -- bulk queries --------------------------------------------------------

    def line_values(self, axis: Axis, start: int, stop: int) -> np.ndarray:
        """Signs for indices start..stop-1 as an int64 array."""
        if stop <= start:
            return np.empty(0, dtype=np.int64)
        if self._iid:
            key = self._vkey if axis is Axis.VERTICAL else self._hkey
            thr = self._vthr if axis is Axis.VERTICAL else self._hthr
            if thr > MASK64:
                return np.ones(stop - start, dtype=np.int64)
            if thr <= 0:
                return -np.ones(stop - start, dtype=np.int64)
            u = mix64_array(mix64_array(zigzag_array(np.arange(start, stop))) ^ np.uint64(key))
            return np.where(u < np.uint64(thr), 1, -1).astype(np.int64)
        chain = self._vchain if axis is Axis.VERTICAL else self._hchain
        spec = self.gen.vertical if axis is Axis.VERTICAL else self.gen.horizontal
        key = self._vkey if axis is Axis.VERTICAL else self._hkey
        self._chain_value(chain, spec, key, start)
        self._chain_value(chain, spec, key, stop - 1)
        pos, neg = chain
        return np.array(
            [pos[i] if i >= 0 else neg[-i] for i in range(start, stop)], dtype=np.int64
        )

    # -- Markov machinery ----------------------------------------------------

    def _uniform(self, key: int, index: int) -> int:
        return mix64(mix64(zigzag(index)) ^ key)

    def _seed_chain(self, spec: MarkovSpec, key: int) -> tuple[list[int], list[int]]:
        u0 = self._uniform(key, 0)
        v0 = 1 if u0 < sign_threshold(spec.stationary_up) else -1
        return [v0], [v0]

    def _chain_value(self, chain, spec: MarkovSpec, key: int, index: int) -> int:
        pos, neg = chain
        thr_up = sign_threshold(spec.flip_up)
        thr_down = sign_threshold(spec.flip_down)
        if index >= 0:
            while len(pos) <= index:
                k = len(pos)
                u = self._uniform(key, k)
                prev = pos[k - 1]
                if prev == -1:
                    pos.append(1 if u < thr_up else -1)
                else:
                    pos.append(-1 if u < thr_down else 1)
            return pos[index]
        while len(neg) <= -index:
            k = len(neg)
            u = self._uniform(key, -k)
            prev = neg[k - 1]
            if prev == -1:
                neg.append(1 if u < thr_up else -1)
            else:
                neg.append(-1 if u < thr_down else 1)
        return neg[-index]


class ExplicitFields:
    """Hand-pinned line values, for worked examples and degenerate fields.

    Unspecified indices fall back to ``default``.  Quacks like
    :class:`Configuration` for everything downstream (edge rules, walks,
    tracing, rendering).
    """

    def __init__(
        self,
        vertical: dict[int, int] | None = None,
        horizontal: dict[int, int] | None = None,
        default: int = -1,
    ):
        if default not in (-1, 1):
            raise ValueError("default sign must be -1 or +1")
        self._v = dict(vertical or {})
        self._h = dict(horizontal or {})
        for val in list(self._v.values()) + list(self._h.values()):
            if val not in (-1, 1):
                raise ValueError("line values must be -1 or +1")
        self.default = default

    def vertical_line(self, i: int) -> int:
        return self._v.get(i, self.default)

    def horizontal_line(self, j: int) -> int:
        return self._h.get(j, self.default)

    def line_value(self, axis: Axis, index: int) -> int:
        return self.vertical_line(index) if axis is Axis.VERTICAL else self.horizontal_line(index)

    def line_values(self, axis: Axis, start: int, stop: int) -> np.ndarray:
        src = self.vertical_line if axis is Axis.VERTICAL else self.horizontal_line
        return np.array([src(i) for i in range(start, stop)], dtype=np.int64)
