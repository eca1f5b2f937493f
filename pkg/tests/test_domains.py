import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from intrinsic_metrics.domains import (
    Kind,
    as_point,
    boundary_distance,
    bounding_box,
    contains,
    half_space,
    load_polygon,
    polygon,
    sample_points,
    unit_ball,
    unit_square,
)
from intrinsic_metrics.errors import DimensionMismatchError, DomainError, PointOutsideDomainError

L_SHAPE = [[0, 0], [2, 0], [2, 1], [1, 1], [1, 2], [0, 2]]


def test_ball_origin():
    assert boundary_distance(unit_ball(3), [0, 0, 0]) == 1.0


def test_halfspace_height():
    assert boundary_distance(half_space(3), [0, 0, 2]) == 2.0


def test_square_center():
    assert boundary_distance(unit_square(), [0.5, 0.5]) == 0.5


def test_square_center_brute_force():
    # dense sampling of the boundary, independent of the segment formula
    s = np.linspace(0.0, 1.0, 250_001)
    zero, one = np.zeros_like(s), np.ones_like(s)
    pts = np.concatenate([np.stack(p, axis=1) for p in ((s, zero), (s, one), (zero, s), (one, s))])
    assert len(pts) >= 10 ** 6
    brute = np.min(np.linalg.norm(pts - [0.5, 0.5], axis=1))
    assert abs(boundary_distance(unit_square(), [0.5, 0.5]) - brute) <= 1e-6


def test_polygon_distance_matches_dense_sampling():
    dom = polygon(L_SHAPE)
    a, b = dom.edges
    s = np.linspace(0, 1, 20_001)[:, None, None]
    pts = (a + s * (b - a)).reshape(-1, 2)
    rng = np.random.default_rng(3)
    x = sample_points(dom, 200, rng)
    brute = np.min(np.linalg.norm(x[:, None, :] - pts[None, :, :], axis=-1), axis=1)
    exact = boundary_distance(dom, x)
    assert np.all(exact <= brute + 1e-15)
    assert np.max(brute - exact) <= 1e-4


@pytest.mark.parametrize("dom,x,expected", [
    (unit_ball(2), [0.99, 0.0], True),
    (unit_ball(2), [1.0, 0.0], False),
    (unit_square(), [0.5, -0.1], False),
    (unit_square(), [0.0, 0.5], False),
    (half_space(2), [5.0, 0.0], False),
    (half_space(2), [5.0, 1e-300], True),
    (polygon(L_SHAPE), [1.5, 1.5], False),
    (polygon(L_SHAPE), [0.5, 1.5], True),
])
def test_contains(dom, x, expected):
    assert bool(contains(dom, x)) == expected


def test_outside_raises():
    with pytest.raises(PointOutsideDomainError):
        boundary_distance(unit_ball(2), [1.0, 0.0])
    with pytest.raises(PointOutsideDomainError):
        boundary_distance(unit_square(), [0.5, 1.0])


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatchError):
        boundary_distance(unit_ball(2), [0.0, 0.0, 0.0])


@pytest.mark.parametrize("verts", [
    [[0, 0], [1, 0]],
    [[0, 0], [1, 1], [1, 0], [0, 1]],
    [[0, 0], [1, 0], [2, 0]],
    [[0, 0], [1, 0], [float("nan"), 1]],
])
def test_invalid_polygons(verts):
    with pytest.raises(DomainError):
        polygon(verts)


def test_closing_vertex_dropped():
    dom = polygon([[0, 0], [1, 0], [1, 1], [0, 1], [0, 0]])
    assert len(dom.vertices) == 4


def test_invalid_dimension():
    with pytest.raises(DomainError):
        unit_ball(1)


def test_load_polygon(tmp_path):
    path = tmp_path / "poly.json"
    path.write_text(json.dumps(L_SHAPE))
    dom = load_polygon(path)
    assert dom.kind is Kind.POLYGON
    assert np.array_equal(dom.vertices, np.array(L_SHAPE, dtype=float))
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"x": 1}))
    with pytest.raises(DomainError):
        load_polygon(bad)


def test_as_point_shapes():
    assert as_point([1, 2]).shape == (2,)
    assert as_point([[1, 2], [3, 4]]).shape == (2, 2)
    with pytest.raises(DimensionMismatchError):
        as_point([1.0])
    with pytest.raises(DomainError):
        as_point([1.0, float("inf")])


@pytest.mark.parametrize("dom", [unit_ball(2), unit_ball(3), half_space(2), unit_square(), polygon(L_SHAPE)])
def test_samples_inside_with_positive_distance(dom):
    rng = np.random.default_rng(0)
    x = sample_points(dom, 5000, rng)
    assert x.shape == (5000, dom.dimension)
    assert np.all(contains(dom, x))
    assert np.all(boundary_distance(dom, x) > 0)
    lo, hi = bounding_box(dom)
    assert np.all(x >= lo) and np.all(x <= hi)


def test_sampling_is_seeded():
    a = sample_points(unit_square(), 100, np.random.default_rng(11))
    b = sample_points(unit_square(), 100, np.random.default_rng(11))
    assert np.array_equal(a, b)


coords = st.floats(min_value=-0.7, max_value=0.7)


@pytest.mark.parametrize("dom,shift", [
    (unit_ball(2), (0.0, 0.0)),
    (half_space(2), (0.0, 0.75)),
    (unit_square(), (0.5, 0.5)),
    (polygon(L_SHAPE), (0.5, 1.0)),
])
@given(x1=coords, x2=coords, y1=coords, y2=coords)
@settings(max_examples=300, deadline=None)
def test_boundary_distance_is_1_lipschitz(dom, shift, x1, x2, y1, y2):
    scale = 0.7 if dom.kind is not Kind.UNIT_BALL else 1.0
    x = np.array([x1, x2]) * scale + shift
    y = np.array([y1, y2]) * scale + shift
    if not (contains(dom, x) and contains(dom, y)):
        return
    dx, dy = boundary_distance(dom, x), boundary_distance(dom, y)
    assert abs(dx - dy) <= np.linalg.norm(x - y) + 1e-12
