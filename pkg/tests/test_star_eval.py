import time
import pytest
import numpy as np

import stardil.geometry as geo
import stardil.star_eval as se
import stardil.instances as inst
import stardil.error as er
from .helpers_for_tests import brute_objective, brute_knn


def test_brute_centered_square(centered_square):
    report = se.evaluate_brute(centered_square, [0, 0])
    assert np.isclose(report.dilation, np.sqrt(2.))
    assert report.witness == (0, 1)


def test_brute_two_points_far_center():
    report = se.evaluate_brute(geo.PointSet([[0, 0], [1, 0]]), [5, 5])
    assert np.isclose(report.dilation, 13.4741872, atol=1e-7)
    assert report.witness == (0, 1)


def test_single_leaf_has_unit_dilation():
    for evaluate in (se.evaluate_brute, se.evaluate_fast):
        report = evaluate(geo.PointSet([[3, 4]]), [0, 0])
        assert report.dilation == 1.
        assert report.witness == (se.NO_WITNESS, se.NO_WITNESS)


def test_brute_matches_explicit_loop():
    rng = np.random.RandomState(2)
    for n in (2, 5, 30):
        coords = rng.uniform(size=(n, 2))
        x = rng.uniform(-1, 2, size=2)
        assert np.isclose(se.evaluate_brute(coords, x).dilation, brute_objective(coords, x), rtol=1e-12)


def test_brute_tie_break_across_blocks(monkeypatch):
    monkeypatch.setattr(se, "BRUTE_BLOCK_PAIRS", 3)
    square = geo.PointSet([[-1, -1], [1, -1], [1, 1], [-1, 1]])
    assert se.evaluate_brute(square, [0, 0]).witness == (0, 1)


def test_witness_uses_pair_dilation():
    rng = np.random.RandomState(8)
    coords = rng.uniform(size=(40, 3))
    c = rng.uniform(size=3)
    report = se.evaluate_fast(coords, c)
    a, b = report.witness
    assert report.dilation == geo.pair_dilation(coords[a], coords[b], c)


@pytest.mark.parametrize("gamma, phi, gamma_spacing, sigma, k", [
    (4., 1.5, 2. / 9., 0.1571348, 162),
    (5., 2., 1. / 3., 0.2357023, 72),
])
def test_derive_constants(gamma, phi, gamma_spacing, sigma, k):
    result = se.derive_constants(gamma, 2)
    assert np.allclose(result[:3], [phi, gamma_spacing, sigma], atol=1e-7)
    assert result[3] == k


def test_derive_constants_errors():
    with pytest.raises(er.ConstantsError):
        se.derive_constants(3., 2)

    with pytest.raises(er.ConstantsError):
        se.derive_constants(3.0001, 2)


def test_profiles():
    fast = se.EvalConstants.from_profile("fast", 2)
    safe = se.EvalConstants.from_profile("safe", 2)
    assert (fast.knn_k, fast.rank_window_l) == (16, 16)
    assert (safe.knn_k, safe.rank_window_l) == (162, 64)
    assert se.EvalConstants.from_profile("safe", 3).knn_k == se.derive_constants(4., 3)[3]

    with pytest.raises(er.InputError):
        se.EvalConstants.from_profile("reckless", 2)


def test_eval_constants_validation():
    with pytest.raises(er.ConstantsError):
        se.EvalConstants(2.5, 4, 4)
    with pytest.raises(er.ConstantsError):
        se.EvalConstants(4., 0, 4)
    with pytest.raises(er.ConstantsError):
        se.EvalConstants(4., 4, 0)


def test_knn_collinear_tie_break():
    coords = [[0, 0], [1, 0], [2, 0], [3, 0]]
    assert se.all_knn(coords, 1).tolist() == [[1], [0], [1], [2]]


def test_knn_square(square):
    assert se.all_knn(square, 2).tolist() == [[1, 3], [0, 2], [1, 3], [0, 2]]


def test_knn_matches_sorting():
    coords = np.random.RandomState(4).uniform(size=(256, 2))
    assert np.array_equal(se.all_knn(coords, 8), brute_knn(coords, 8))


def _grid(side):
    xs, ys = np.meshgrid(np.arange(float(side)), np.arange(float(side)))
    return geo.PointSet(np.column_stack([xs.ravel(), ys.ravel()]))


def test_knn_with_grid_ties():
    coords = _grid(5).coords
    assert np.array_equal(se.all_knn(coords, 3), brute_knn(coords, 3))


@pytest.mark.parametrize("k", range(1, 36))
def test_knn_with_ties_on_kth_radius(k):
    grid = _grid(6)
    assert np.array_equal(se.all_knn(grid, k), brute_knn(grid.coords, k))


def test_fast_on_grid_with_center_on_lattice():
    grid = _grid(6)
    leaves = grid.without(0)
    brute = se.evaluate_brute(leaves, grid[0]).dilation
    assert se.evaluate_fast(leaves, grid[0]).dilation <= brute
    assert se.evaluate_fast(leaves, grid[0], se.EvalConstants.from_profile("safe", 2)).dilation == brute


def test_knn_clamps_k(square):
    assert se.all_knn(square, 10).shape == (4, 3)
    with pytest.raises(er.InputError):
        se.all_knn(square, 0)


def test_candidates_high():
    consts = se.EvalConstants(4., 2, 1)
    assert se.candidates_high(geo.PointSet([[0, 0], [1, 0]]), consts).tolist() == [[0, 1]]
    square = geo.PointSet([[0, 0], [1, 0], [1, 1], [0, 1]])
    assert se.candidates_high(square, consts).tolist() == [[0, 1], [0, 3], [1, 2], [2, 3]]


def test_candidates_low():
    radii = geo.PointSet([[0, 2], [1, 0], [0, -8], [-4, 0]])
    pairs = se.candidates_low(radii, [0, 0], se.EvalConstants(4., 1, 1))
    assert pairs.tolist() == [[0, 1], [0, 3], [2, 3]]

    triple = geo.PointSet([[0, 0], [3, 1], [5, 5]])
    assert se.candidates_low(triple, [1, 1], se.EvalConstants(4., 1, 2)).tolist() == [[0, 1], [0, 2], [1, 2]]


def test_fast_square_center(centered_square):
    fast = se.evaluate_fast(centered_square, [0, 0])
    brute = se.evaluate_brute(centered_square, [0, 0])
    assert fast.dilation == brute.dilation
    assert np.isclose(fast.dilation, np.sqrt(2.))


def _centers(points, rng):
    lo, hi = points.coords.min(axis=0), points.coords.max(axis=0)
    return [points.centroid(), rng.uniform(lo, hi), hi + 10. * (hi - lo)]


@pytest.mark.parametrize("profile", ["fast", "safe"])
def test_fast_matches_brute(random_instances, profile):
    rng = np.random.RandomState(1)
    for kind, n, d, seed, points in random_instances(40):
        consts = se.EvalConstants.from_profile(profile, d)
        for c in _centers(points, rng):
            fast = se.evaluate_fast(points, c, consts)
            brute = se.evaluate_brute(points, c)
            assert np.isclose(fast.dilation, brute.dilation, rtol=1e-12, atol=0), (kind, n, d, seed)
            assert fast.candidate_count <= (consts.knn_k + 2 * consts.rank_window_l) * n


def test_candidate_growth_is_monotone():
    rng = np.random.RandomState(6)
    points = inst.generate("clustered", 120, 2, 6)
    for c in _centers(points, rng):
        small = se.evaluate_fast(points, c, se.EvalConstants(4., 2, 1)).dilation
        large = se.evaluate_fast(points, c, se.EvalConstants(4., 16, 16)).dilation
        brute = se.evaluate_brute(points, c).dilation
        assert small <= large <= brute


@pytest.mark.parametrize("distance, rho, expected", [
    (5., 2., 2),
    (1., 2., 0),
    (0.3, 2., -2),
    (4., 2., 2),
])
def test_annulus_index(distance, rho, expected):
    assert se.annulus_index([distance, 0.], [0., 0.], rho) == expected


def test_annulus_index_errors():
    with pytest.raises(er.InputError):
        se.annulus_index([1, 1], [1, 1], 2.)
    with pytest.raises(er.InputError):
        se.annulus_index([1, 1], [0, 0], 1.)


def test_annulus_populations():
    points = geo.PointSet([[1, 0], [0, 1.5], [3, 0], [0, -5]])
    assert se.annulus_populations(points, [0, 0], 2.) == {0: 2, 1: 1, 2: 1}


def test_rho_and_theta():
    assert np.isclose(se.rho_from_dilation(3.), np.sqrt(2.) + 1e-6)
    assert np.isfinite(se.rho_from_dilation(1.))
    theta = se.theta_min(2., se.rho_from_dilation(2.))
    assert 0. <= theta <= np.pi


def test_witness_annulus_gap(random_instances):
    rng = np.random.RandomState(9)
    for kind, n, d, seed, points in random_instances(30):
        for c in _centers(points, rng):
            report = se.evaluate_brute(points, c)
            if report.dilation <= 1. + 1e-6:
                continue
            assert se.witness_annulus_gap(points, c, report) <= 2


def test_witness_near_neighbors_at_high_dilation():
    rng = np.random.RandomState(12)
    k = se.derive_constants(4., 2)[3]
    checked = 0
    for seed in range(6):
        points = inst.generate(inst.KINDS[seed % 4], 300, 2, seed)
        c = points.centroid() + rng.uniform(-3, 3, size=2)
        report = se.evaluate_brute(points, c)
        if report.dilation < 4.:
            continue
        swapped = se.DilationReport(report.dilation, report.witness_b, report.witness_a)
        rank = min(se.witness_neighbor_rank(points, report), se.witness_neighbor_rank(points, swapped))
        assert rank <= k
        checked += 1
    assert checked > 0


@pytest.mark.slow
@pytest.mark.parametrize("profile", ["fast", "safe"])
def test_fast_matches_brute_full_suite(random_instances, profile):
    rng = np.random.RandomState(100)
    cases = random_instances(500, sizes=(4, 8, 16, 32, 64, 128, 256), seed0=1000)
    for kind, n, d, seed, points in cases:
        consts = se.EvalConstants.from_profile(profile, d)
        c = _centers(points, rng)[seed % 3]
        fast = se.evaluate_fast(points, c, consts)
        brute = se.evaluate_brute(points, c)
        assert np.isclose(fast.dilation, brute.dilation, rtol=1e-12, atol=0), (kind, n, d, seed)


@pytest.mark.slow
def test_fast_at_scale():
    points = inst.generate("uniform", 100000, 2, 0)
    c = points.centroid()

    start = time.perf_counter()
    report = se.evaluate_fast(points, c)
    assert time.perf_counter() - start < 5.

    rng = np.random.RandomState(0)
    i = rng.randint(points.n, size=10000)
    j = rng.randint(points.n, size=10000)
    keep = i != j
    sampled = geo.pair_dilations(points.coords, geo.distances_to(points.coords, c), i[keep], j[keep])
    assert np.all(sampled <= report.dilation)
