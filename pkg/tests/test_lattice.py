import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from cornerperc import (
    Axis,
    Configuration,
    ExplicitFields,
    Params,
    Parity,
    degree_profile,
    diamond_map,
    diamond_points,
    edge_between,
    edge_open,
    horizontal_edge_open,
    open_edges_in_window,
    open_neighbors,
    parity,
    reflect_edges_x,
    translate_fields,
    vertical_edge_open,
)


def test_parity_examples():
    assert parity((0, 0)) is Parity.EVEN
    assert parity((1, 0)) is Parity.ODD
    assert parity((-3, 1)) is Parity.EVEN


def test_edge_rules_on_pinned_lines():
    # four lines pinned, everything else irrelevant for these edges
    f = ExplicitFields(vertical={1: 1, -3: -1}, horizontal={1: 1, 2: -1})
    assert vertical_edge_open(f, 1, 0)  # column sign +1 opens odd-based edges
    assert not vertical_edge_open(f, 1, 1)
    assert vertical_edge_open(f, -3, 1)  # column sign -1 opens even-based edges
    assert horizontal_edge_open(f, 0, 1)
    assert not horizontal_edge_open(f, 1, 1)
    assert horizontal_edge_open(f, 0, 2)


def test_open_neighbors_unit_square(unit_square):
    # worked by hand from the two openness rules
    assert open_neighbors(unit_square, (0, 0)) == ((1, 0), (0, 1))


@given(st.integers(-10**6, 10**6), st.integers(-10**6, 10**6), st.integers(0, 2**32))
def test_exactly_one_open_edge_each_orientation(x, y, seed):
    cfg = Configuration(seed, Params(0.37, 0.83))
    assert horizontal_edge_open(cfg, x, y) != horizontal_edge_open(cfg, x - 1, y)
    assert vertical_edge_open(cfg, x, y) != vertical_edge_open(cfg, x, y - 1)


def test_alternation_along_rows_and_columns():
    cfg = Configuration(11, Params(0.6, 0.2))
    row = [horizontal_edge_open(cfg, x, 5) for x in range(-50, 50)]
    col = [vertical_edge_open(cfg, -7, y) for y in range(-50, 50)]
    assert all(a != b for a, b in zip(row, row[1:]))
    assert all(a != b for a, b in zip(col, col[1:]))


def test_degree_profile_random_configurations():
    for seed, p, q in [(0, 0.5, 0.5), (1, 0.9, 0.1), (2, 0.3, 0.8), (3, 0.5, 0.7)]:
        assert degree_profile(Configuration(seed, Params(p, q)), 50)


def test_degree_profile_agrees_with_scalar_count():
    cfg = Configuration(17, Params(0.44, 0.71))
    assert degree_profile(cfg, 10)
    for x in range(-10, 11):
        for y in range(-10, 11):
            n_h = sum(
                horizontal_edge_open(cfg, bx, y) for bx in (x - 1, x)
            )
            n_v = sum(vertical_edge_open(cfg, x, by) for by in (y - 1, y))
            assert n_h == 1 and n_v == 1


def test_edge_between_and_edge_open():
    cfg = Configuration(1, Params(0.5, 0.5))
    assert edge_between((2, 3), (3, 3)) == (2, 3, "H")
    assert edge_between((3, 3), (2, 3)) == (2, 3, "H")
    assert edge_between((0, 0), (0, -1)) == (0, -1, "V")
    with pytest.raises(ValueError):
        edge_between((0, 0), (1, 1))
    assert edge_open(cfg, (2, 3, "H")) == horizontal_edge_open(cfg, 2, 3)


def test_translate_identity():
    cfg = Configuration(4, Params(0.3, 0.6))
    view = translate_fields(cfg, (0, 0))
    assert [view.vertical_line(i) for i in range(-5, 5)] == [
        cfg.vertical_line(i) for i in range(-5, 5)
    ]


@pytest.mark.parametrize("v", [(2, 0), (0, 2), (-4, 2), (3, 5), (1, 0), (0, -1), (-3, 2)])
def test_translate_shifts_edge_set(v):
    cfg = Configuration(23, Params(0.7, 0.4))
    view = translate_fields(cfg, v)
    dx, dy = v
    for x in range(-12, 13):
        for y in range(-12, 13):
            assert vertical_edge_open(view, x, y) == vertical_edge_open(cfg, x - dx, y - dy)
            assert horizontal_edge_open(view, x, y) == horizontal_edge_open(cfg, x - dx, y - dy)


def test_translate_round_trip():
    cfg = Configuration(8, Params(0.25, 0.75))
    back = translate_fields(translate_fields(cfg, (2, 0)), (-2, 0))
    for i in range(-30, 30):
        assert back.vertical_line(i) == cfg.vertical_line(i)
        assert back.horizontal_line(i) == cfg.horizontal_line(i)


def test_translate_bulk_matches_scalar():
    cfg = Configuration(31, Params(0.52, 0.18))
    view = translate_fields(cfg, (3, 2))
    for axis in (Axis.VERTICAL, Axis.HORIZONTAL):
        assert view.line_values(axis, -40, 40).tolist() == [
            view.line_value(axis, i) for i in range(-40, 40)
        ]


def test_odd_translation_flips_marginal():
    # the (1,0)-shifted view of a q-model should look like a (1-q)-model
    q = 0.7
    view = translate_fields(Configuration(9, Params(0.5, q)), (1, 0))
    freq = np.mean(view.line_values(Axis.VERTICAL, 0, 10**5) == 1)
    sigma = math.sqrt(q * (1 - q) / 10**5)
    assert abs(freq - (1 - q)) <= 4 * sigma


def test_diamond_map_examples():
    assert diamond_map((1, 0)) == (1, 1)
    pts = diamond_points(2)
    assert len(pts) == len(set(pts)) == 25
    assert all((x + y) % 2 == 0 for x, y in diamond_points(5))


def test_diamond_points_match_closed_form():
    n = 4
    expected = {
        (x1, x2)
        for x1 in range(-2 * n, 2 * n + 1)
        for x2 in range(-2 * n, 2 * n + 1)
        if (x1 + x2) % 2 == 0 and -2 * n + abs(x1) <= x2 <= 2 * n - abs(x1)
    }
    assert set(diamond_points(n)) == expected
    with pytest.raises(ValueError):
        diamond_points(0)


def _degree_ok_in_edge_set(edges, n):
    for x in range(-n + 1, n):
        for y in range(-n + 1, n):
            n_h = ((x - 1, y, "H") in edges) + ((x, y, "H") in edges)
            n_v = ((x, y - 1, "V") in edges) + ((x, y, "V") in edges)
            if n_h != 1 or n_v != 1:
                return False
    return True


def test_reflection_preserves_degree_structure():
    cfg = Configuration(13, Params(0.65, 0.35))
    edges = open_edges_in_window(cfg, 12)
    assert _degree_ok_in_edge_set(edges, 12)
    assert _degree_ok_in_edge_set(reflect_edges_x(edges), 12)
    assert reflect_edges_x(reflect_edges_x(edges)) == edges


def test_origin_vertical_edge_frequency_across_seeds():
    # the edge {(0,0),(0,1)} is open exactly when the column-0 sign is -1
    q = 0.7
    hits = sum(
        vertical_edge_open(Configuration(seed, Params(0.5, q)), 0, 0) for seed in range(100_000)
    )
    freq = hits / 100_000
    sigma = math.sqrt(q * (1 - q) / 100_000)
    assert abs(freq - (1 - q)) <= 4 * sigma
