import math
from fractions import Fraction

import numpy as np
import pytest

from cornerperc import (
    Configuration,
    ExplicitFields,
    GeneratorSpec,
    HeightOracle,
    Params,
    ceil_half,
    crossing_height,
    edge_open,
    face_is_black,
)


def test_ceil_half_is_mathematical_ceiling():
    for s in range(-21, 22):
        assert ceil_half(s) == math.ceil(Fraction(s, 2))
    assert ceil_half(-3) == -1


def test_walk_anchored_at_zero():
    for seed in range(5):
        oracle = HeightOracle(Configuration(seed, Params(0.4, 0.8)))
        assert oracle.column_walk(0) == 0
        assert oracle.row_walk(0) == 0


def test_walk_on_constant_fields(all_ones):
    oracle = HeightOracle(all_ones)
    assert oracle.column_walk(5) == 5
    assert oracle.row_walk(-4) == -4  # the negative branch subtracts the signs


def test_walk_first_negative_value():
    plus = HeightOracle(ExplicitFields(vertical={0: 1}))
    minus = HeightOracle(ExplicitFields(vertical={0: -1}))
    assert plus.column_walk(-1) == -1
    assert minus.column_walk(-1) == 1


@pytest.mark.parametrize(
    "gen", [GeneratorSpec.iid(), GeneratorSpec.markov(0.35, 0.55)], ids=["iid", "markov"]
)
def test_walk_increments_match_line_values(gen):
    cfg = Configuration(12, Params(0.6, 0.3), gen)
    oracle = HeightOracle(cfg)
    for n in range(-60, 61):
        assert oracle.column_walk(n) - oracle.column_walk(n - 1) == cfg.vertical_line(n)
        assert oracle.row_walk(n) - oracle.row_walk(n - 1) == cfg.horizontal_line(n)


def test_walk_query_order_independent():
    cfg = Configuration(2, Params(0.55, 0.45))
    scattered = HeightOracle(cfg)
    order = [17, -3, 0, 44, -80, 5, -3, 100, -1]
    got = {n: scattered.column_walk(n) for n in order}
    sequential = HeightOracle(cfg)
    for n in range(-80, 101):
        sequential.column_walk(n)
    assert all(sequential.column_walk(n) == got[n] for n in order)


def test_walk_range_matches_scalars():
    oracle = HeightOracle(Configuration(6, Params(0.3, 0.7)))
    for lo, hi in [(-15, 15), (-10, -2), (3, 20), (0, 0)]:
        assert oracle.column_walk_range(lo, hi).tolist() == [
            oracle.column_walk(n) for n in range(lo, hi + 1)
        ]
        assert oracle.row_walk_range(lo, hi).tolist() == [
            oracle.row_walk(n) for n in range(lo, hi + 1)
        ]


def test_reference_face_height_zero():
    for seed in range(10):
        oracle = HeightOracle(Configuration(seed, Params(0.8, 0.2)))
        assert oracle.height(0, 0) == 0


def test_height_of_negative_half_integer():
    # three -1 columns make the walk sum to -3 at n=3
    oracle = HeightOracle(ExplicitFields(vertical={1: -1, 2: -1, 3: -1}))
    assert oracle.height(3, 0) == -1


def test_height_on_constant_fields(all_ones):
    assert HeightOracle(all_ones).height(3, 2) == 3


def test_crossing_rule_reproduces_formula():
    rng = np.random.default_rng(7)
    for p, q in ((0.5, 0.5), (0.9, 0.9), (0.5, 0.6)):
        for seed in range(2):
            cfg = Configuration(seed, Params(p, q))
            oracle = HeightOracle(cfg)
            for _ in range(100):
                n, m = (int(v) for v in rng.integers(-200, 201, size=2))
                assert crossing_height(cfg, n, m) == oracle.height(n, m)


def test_crossing_path_independent():
    cfg = Configuration(3, Params(0.7, 0.6))
    rng = np.random.default_rng(11)
    for _ in range(100):
        n, m = (int(v) for v in rng.integers(-150, 151, size=2))
        assert crossing_height(cfg, n, m) == crossing_height(cfg, n, m, row_first=True)


def test_crossing_origin_is_empty_path():
    assert crossing_height(Configuration(0, Params(0.5, 0.5)), 0, 0) == 0


def test_height_steps_across_face_boundaries():
    # crossing an open edge moves the height by exactly one, a closed one by zero
    cfg = Configuration(21, Params(0.35, 0.65))
    oracle = HeightOracle(cfg)
    rng = np.random.default_rng(13)
    for _ in range(300):
        n, m = (int(v) for v in rng.integers(-100, 100, size=2))
        h = oracle.height(n, m)
        east = oracle.height(n + 1, m)
        north = oracle.height(n, m + 1)
        assert abs(east - h) == (1 if edge_open(cfg, (n + 1, m, "V")) else 0)
        assert abs(north - h) == (1 if edge_open(cfg, (n, m + 1, "H")) else 0)


def test_open_crossing_sign_matches_face_color():
    cfg = Configuration(21, Params(0.35, 0.65))
    oracle = HeightOracle(cfg)
    rng = np.random.default_rng(17)
    for _ in range(200):
        n, m = (int(v) for v in rng.integers(-100, 100, size=2))
        if edge_open(cfg, (n + 1, m, "V")):
            delta = oracle.height(n + 1, m) - oracle.height(n, m)
            assert delta == (1 if face_is_black(n, m) else -1)


def test_face_colors():
    assert face_is_black(0, 0)
    assert not face_is_black(1, 0)
    assert face_is_black(-1, 1)
