import pytest
import numpy as np
from hypothesis import given, settings, assume, strategies as st

import stardil.geometry as geo
import stardil.error as er


coordinate = st.floats(min_value=-100., max_value=100., allow_nan=False, allow_infinity=False)
planar_point = st.tuples(coordinate, coordinate)


@pytest.mark.parametrize("a, b, expected", [
    ([0, 0], [3, 4], 5.),
    ([1, 1], [1, 1], 0.),
    ([0, 0, 0], [1, 1, 1], np.sqrt(3.)),
])
def test_distance(a, b, expected):
    assert np.isclose(geo.distance(a, b), expected)


def test_distance_dimension_mismatch():
    with pytest.raises(er.InputError):
        geo.distance([0, 0], [0, 0, 0])


@pytest.mark.parametrize("a, b, c, expected", [
    ([0, 0], [2, 0], [1, 1], np.sqrt(2.)),
    ([0, 0], [4, 0], [1, 0], 1.),
    ([0, 0], [1, 0], [0, 1], 1. + np.sqrt(2.)),
])
def test_pair_dilation(a, b, c, expected):
    assert np.isclose(geo.pair_dilation(a, b, c), expected)


def test_pair_dilation_coincident_pair():
    with pytest.raises(er.UndefinedDilationError):
        geo.pair_dilation([1, 2], [1, 2], [0, 0])


@pytest.mark.parametrize("coords", [[1.], [[0, 0]], [0, np.nan], [np.inf, 0]])
def test_as_point_rejects(coords):
    with pytest.raises(er.InputError):
        geo.as_point(coords)


def test_as_point_is_read_only():
    p = geo.as_point([1, 2])
    with pytest.raises(ValueError):
        p[0] = 3.


def test_point_set_rejects_duplicates():
    with pytest.raises(er.InputError) as excinfo:
        geo.PointSet([[0, 0], [1, 1], [0, 0]])
    assert "0 and 2" in str(excinfo.value)


def test_point_set_rejects_mixed_input():
    with pytest.raises(er.InputError):
        geo.PointSet([[0, 0], [1, np.nan]])

    with pytest.raises(er.InputError):
        geo.PointSet([[0], [1]])

    with pytest.raises(er.InputError):
        geo.PointSet([[0, 0], [1, 1]], dim=3)


def test_point_set_views(square):
    assert square.n == 4
    assert square.dim == 2
    assert np.allclose(square.centroid(), [0.5, 0.5])
    assert np.allclose(square.without(0).coords, [[1, 0], [1, 1], [0, 1]])
    assert np.allclose(square.subset([3, 1]).coords, [[0, 1], [1, 0]])


def test_empty_point_set_needs_dimension():
    with pytest.raises(er.InputError):
        geo.PointSet([])
    assert geo.PointSet([], dim=2).n == 0


@pytest.mark.parametrize("foci, lam, semi_major, semi_minor", [
    (([-1, 0], [1, 0]), 2., 2., np.sqrt(3.)),
    (([-1, 0], [1, 0]), 1., 1., 0.),
    (([0, 0], [0, 2]), 1.5, 1.5, np.sqrt(1.25)),
])
def test_ellipse_from_pair(foci, lam, semi_major, semi_minor):
    e = geo.ellipse_from_pair(foci[0], foci[1], lam)
    assert np.isclose(e.semi_major, semi_major)
    assert np.isclose(e.semi_minor, semi_minor)
    assert np.allclose(e.center, np.mean(foci, axis=0))


def test_ellipse_from_pair_errors():
    with pytest.raises(er.EmptyLevelSetError):
        geo.ellipse_from_pair([-1, 0], [1, 0], 0.99)

    with pytest.raises(er.InputError):
        geo.ellipse_from_pair([1, 0], [1, 0], 2.)


@pytest.mark.parametrize("p, expected", [
    ([0, 0], True),
    ([2, 0], True),
    ([2.001, 0], False),
])
def test_ellipse_contains(p, expected):
    e = geo.ellipse_from_pair([-1, 0], [1, 0], 2.)
    assert geo.ellipse_contains(e, p) == expected


def test_ellipse_rotation_is_planar():
    e = geo.ellipse_from_pair([0, 0, 0], [1, 0, 0], 2.)
    with pytest.raises(er.UnsupportedDimensionError):
        e.rotation


@given(planar_point, planar_point, planar_point)
@settings(deadline=None, max_examples=200)
def test_pair_dilation_bounds_and_symmetry(a, b, c):
    assume(geo.distance(a, b) > 1e-3)
    value = geo.pair_dilation(a, b, c)
    assert value >= 1. - 1e-12
    assert value == geo.pair_dilation(b, a, c)


@given(planar_point, planar_point, planar_point, st.floats(min_value=1.01, max_value=10.))
@settings(deadline=None, max_examples=200)
def test_ellipse_matches_pair_dilation(a, b, x, lam):
    assume(geo.distance(a, b) > 1e-3)
    value = geo.pair_dilation(a, b, x)
    assume(abs(value - lam) > 1e-6 * lam)

    e = geo.ellipse_from_pair(a, b, lam)
    assert geo.ellipse_contains(e, x) == (value <= lam)


def test_level_sets_are_convex():
    rng = np.random.RandomState(3)
    e = geo.ellipse_from_pair([-1, 0.5], [2, -0.5], 1.7)
    inside = [p for p in rng.uniform(-4, 4, size=(400, 2)) if geo.ellipse_contains(e, p)]
    assert len(inside) > 10

    t = np.linspace(0, 1, 11)[:, np.newaxis]
    for p, q in zip(inside[:-1], inside[1:]):
        for x in p + t * (q - p):
            assert geo.ellipse_contains(e, x)
