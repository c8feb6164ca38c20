import pytest
import numpy as np

import stardil.geometry as geo
import stardil.conic as cn
import stardil.error as er


def unit_circle(cx=0., cy=0., r=1.):
    return cn.Conic(1., 0., 1., -2. * cx, -2. * cy, cx * cx + cy * cy - r * r)


def scaled(conic):
    # coefficients normalized so that the constant term is -1
    return conic.coeffs / -conic.coeffs[5]


def boundary_points(e, samples):
    theta = np.linspace(0., 2. * np.pi, samples, endpoint=False)
    c, s = np.cos(e.rotation), np.sin(e.rotation)
    x = e.semi_major * np.cos(theta)
    y = e.semi_minor * np.sin(theta)
    return np.column_stack([e.center[0] + c * x - s * y, e.center[1] + s * x + c * y])


def test_axis_aligned_conic():
    e = geo.ellipse_from_pair([-1, 0], [1, 0], 2.)
    assert np.allclose(scaled(cn.ellipse_to_conic(e)), [0.25, 0., 1. / 3., 0., 0., -1.])


def test_vertical_conic():
    e = geo.ellipse_from_pair([0, 0], [0, 2], 1.5)
    a2, b2 = 2.25, 1.25
    expected = np.array([1. / b2, 0., 1. / a2, 0., -2. / a2, 1. / a2 - 1.]) / (1. - 1. / a2)
    assert np.allclose(scaled(cn.ellipse_to_conic(e)), expected, atol=1e-12)


def test_conic_sign_matches_containment():
    rng = np.random.RandomState(11)
    for _ in range(10):
        a, b = rng.uniform(-3, 3, size=(2, 2))
        e = geo.ellipse_from_pair(a, b, rng.uniform(1.05, 3.))
        conic = cn.ellipse_to_conic(e)
        for p in rng.uniform(-6, 6, size=(100, 2)):
            sums = geo.focal_sums(e, p)[0]
            if abs(sums - e.sum_bound) < 1e-6 * e.sum_bound:
                continue
            assert (conic(*p) < 0) == geo.ellipse_contains(e, p)


def test_conic_requires_planar_ellipse():
    with pytest.raises(er.UnsupportedDimensionError):
        cn.ellipse_to_conic(geo.ellipse_from_pair([0, 0, 0], [1, 0, 0], 2.))


def test_conic_rejects_segment():
    with pytest.raises(er.InputError):
        cn.ellipse_to_conic(geo.ellipse_from_pair([0, 0], [1, 0], 1.))


def test_conic_without_quadratic_part():
    with pytest.raises(er.InputError):
        cn.Conic(0., 0., 0., 1., 1., 1.)


def test_circle_intersections():
    hits = cn.conic_intersections(unit_circle(), unit_circle(1., 0.))
    assert not hits.degenerate
    points = sorted(hits.points.tolist(), key=lambda p: p[1])
    assert np.allclose(points, [[0.5, -np.sqrt(3.) / 2.], [0.5, np.sqrt(3.) / 2.]])


def test_tangent_circles_meet_once():
    hits = cn.conic_intersections(unit_circle(), unit_circle(2., 0.))
    assert len(hits) == 1
    assert np.allclose(hits[0], [1., 0.], atol=1e-5)


def test_nearly_tangent_circles_cross_twice():
    hits = cn.conic_intersections(unit_circle(), unit_circle(1.99, 0.))
    points = sorted(hits.points.tolist(), key=lambda p: p[1])
    assert len(points) == 2
    assert np.allclose(points, [[0.995, -np.sqrt(1. - 0.995 ** 2)], [0.995, np.sqrt(1. - 0.995 ** 2)]])


def test_concentric_circles_do_not_meet():
    hits = cn.conic_intersections(unit_circle(), unit_circle(r=2.))
    assert len(hits) == 0
    assert not hits.degenerate


def test_identical_conics_are_degenerate():
    e = geo.ellipse_from_pair([-1, 0], [1, 0], 2.)
    c = cn.ellipse_to_conic(e)
    scaled_copy = cn.Conic(*(3. * c.coeffs))
    assert cn.conic_intersections(c, scaled_copy).degenerate


def test_random_ellipse_intersections():
    rng = np.random.RandomState(5)
    checked = 0
    for _ in range(20):
        a, b, p, q = rng.uniform(-2, 2, size=(4, 2))
        e1 = geo.ellipse_from_pair(a, b, rng.uniform(1.1, 2.5))
        e2 = geo.ellipse_from_pair(p, q, rng.uniform(1.1, 2.5))
        c1, c2 = cn.ellipse_to_conic(e1), cn.ellipse_to_conic(e2)

        hits = cn.conic_intersections(c1, c2)
        assert len(hits) <= 4
        for h in hits:
            assert abs(c1(*h)) < 1e-8
            assert abs(c2(*h)) < 1e-8

        # crossings seen along the boundary of the first ellipse
        values = np.array([c2(*x) for x in boundary_points(e1, 20000)])
        if np.min(np.abs(values)) < 1e-6:
            continue
        signs = np.sign(values)
        crossings = int(np.sum(signs != np.roll(signs, 1)))
        assert crossings == len(hits)
        checked += 1

    assert checked >= 10


def test_quartic_simple_roots():
    coeffs = np.poly([1., 2., 3., 4.])
    assert np.allclose(cn.solve_quartic_real(coeffs), [1., 2., 3., 4.])


def test_quartic_without_real_roots():
    assert len(cn.solve_quartic_real([1., 0., 0., 0., 1.])) == 0


def test_quartic_lower_degree():
    assert np.allclose(cn.solve_quartic_real([0., 0., 1., 0., -2.]), [-np.sqrt(2.), np.sqrt(2.)])


def test_quartic_double_root_collapses():
    coeffs = np.poly([1., 1., -2., 3.])
    roots = cn.solve_quartic_real(coeffs)
    assert np.allclose(roots, [-2., 1., 3.], atol=1e-6)


def test_zero_polynomial():
    with pytest.raises(er.InputError):
        cn.solve_quartic_real([0., 0., 0.])
