from __future__ import absolute_import
import os
import logging
import numpy as np
import allensdk.core.json_utilities as ju
from scipy.spatial import cKDTree
from . import geometry as geo
from . import error as er

DEFAULT_EVAL_CONSTANTS_FILE = os.path.join(os.path.dirname(__file__), 'defaults/eval_constants.json')

NO_WITNESS = -1

# pairs scored per vectorised block of the brute force oracle
BRUTE_BLOCK_PAIRS = 1 << 20

# relative widening of the tie-repair ball in all_knn
KNN_TIE_SLACK = 1e-9


def load_default_eval_constants():
    logging.debug("loading default evaluation constants file: %s", DEFAULT_EVAL_CONSTANTS_FILE)
    return ju.read(DEFAULT_EVAL_CONSTANTS_FILE)


def derive_constants(gamma_threshold, dim, knn_cap=None):
    """Constants of the high dilation case for a threshold and a dimension.

    Parameters
    ----------
    gamma_threshold : dilation threshold, must exceed 3
    dim : dimension of the leaves
    knn_cap : largest admissible neighbour count (optional, default from defaults file)

    Returns
    -------
    phi : ratio bound |ac| >= phi |a a_hat|
    gamma : spacing of leaves near a, relative to |a a_hat|
    sigma : cube side of the packing argument, relative to |a a_hat|
    k : number of nearest neighbours that must contain a_hat
    """

    if not gamma_threshold > 3:
        raise er.ConstantsError("threshold %r must exceed 3" % gamma_threshold)

    if dim < 2:
        raise er.InputError("dimension must be at least 2, got %d" % dim)

    if knn_cap is None:
        knn_cap = load_default_eval_constants()["knn_cap"]

    phi = (gamma_threshold - 1.) / 2.
    gamma = (2. / 3.) * (1. - 1. / phi)
    sigma = gamma / np.sqrt(dim)
    cubes = (2. / sigma) ** dim

    if not cubes <= knn_cap:
        raise er.ConstantsError("threshold %r needs %.3g neighbours in d=%d, above cap %d"
                                % (gamma_threshold, cubes, dim, knn_cap))

    # (2/sigma)^d is often an integer in exact arithmetic
    k = int(np.ceil(cubes * (1. - 1e-12)))

    return phi, gamma, sigma, k


class EvalConstants(object):
    """Constants governing candidate pair generation."""

    PROFILES = ("fast", "safe")

    def __init__(self, gamma_threshold, knn_k, rank_window_l, profile=None):
        if not gamma_threshold > 3:
            raise er.ConstantsError("threshold %r must exceed 3" % gamma_threshold)
        if int(knn_k) < 1:
            raise er.ConstantsError("knn_k must be at least 1, got %r" % knn_k)
        if int(rank_window_l) < 1:
            raise er.ConstantsError("rank_window_l must be at least 1, got %r" % rank_window_l)

        self.gamma_threshold = float(gamma_threshold)
        self.knn_k = int(knn_k)
        self.rank_window_l = int(rank_window_l)
        self.profile = profile

    @classmethod
    def from_profile(cls, profile="fast", dim=2):
        defaults = load_default_eval_constants()
        if profile not in cls.PROFILES:
            raise er.InputError("unknown constants profile %r, expected one of %s" % (profile, cls.PROFILES))

        params = defaults[profile]
        knn_k = params["knn_k"]
        if knn_k is None:
            knn_k = derive_constants(params["gamma_threshold"], dim, defaults["knn_cap"])[3]

        return cls(params["gamma_threshold"], knn_k, params["rank_window_l"], profile=profile)

    def as_dict(self):
        return dict(gamma_threshold=self.gamma_threshold,
                    knn_k=self.knn_k,
                    rank_window_l=self.rank_window_l,
                    profile=self.profile)

    def __repr__(self):
        return "EvalConstants(%s)" % ", ".join("%s=%r" % kv for kv in sorted(self.as_dict().items()))


class DilationReport(object):
    """Dilation of a star and the leaf pair realizing it."""

    def __init__(self, dilation, witness_a=NO_WITNESS, witness_b=NO_WITNESS, candidate_count=0):
        self.dilation = float(dilation)
        self.witness_a = int(witness_a)
        self.witness_b = int(witness_b)
        self.candidate_count = int(candidate_count)

    @property
    def witness(self):
        return self.witness_a, self.witness_b

    def as_dict(self):
        return dict(dilation=self.dilation,
                    witness=[self.witness_a, self.witness_b],
                    candidate_count=self.candidate_count)

    def __repr__(self):
        return "DilationReport(dilation=%r, witness=(%d, %d))" % (self.dilation, self.witness_a, self.witness_b)


def _point_set(points):
    return points if isinstance(points, geo.PointSet) else geo.PointSet(points)


def _coords(points):
    return _point_set(points).coords


def _center(center, dim):
    return geo.as_point(center, dim=dim)


def unique_pairs(i, j):
    """Canonical (min, max) pairs without self pairs or repeats, sorted lexicographically."""

    i = np.asarray(i, dtype=int).ravel()
    j = np.asarray(j, dtype=int).ravel()
    lo = np.minimum(i, j)
    hi = np.maximum(i, j)
    keep = lo != hi
    lo, hi = lo[keep], hi[keep]
    if len(lo) == 0:
        return np.empty((0, 2), dtype=int)

    # one integer key per pair, ordered like (lo, hi)
    base = np.int64(hi.max()) + 1
    keys = np.unique(lo.astype(np.int64) * base + hi)
    return np.column_stack([keys // base, keys % base]).astype(int)


def _best_pair(dilations, pairs):
    # pairs are sorted, so argmax picks the lexicographically smallest maximizer
    best = int(np.argmax(dilations))
    return dilations[best], pairs[best, 0], pairs[best, 1]


def evaluate_brute(points, center):
    """Dilation of a star by scoring every pair of leaves.

    Parameters
    ----------
    points : PointSet of leaves
    center : star center

    Returns
    -------
    DilationReport; ties resolve to the lexicographically smallest pair
    """

    coords = _coords(points)
    n = len(coords)
    center = _center(center, coords.shape[1])

    if n < 2:
        return DilationReport(1.)

    center_dist = geo.distances_to(coords, center)
    rows_per_block = max(1, BRUTE_BLOCK_PAIRS // n)
    columns = np.arange(n)

    best = (-np.inf, NO_WITNESS, NO_WITNESS)
    for start in range(0, n - 1, rows_per_block):
        rows = np.arange(start, min(start + rows_per_block, n - 1))
        mask = columns[np.newaxis, :] > rows[:, np.newaxis]
        i = np.broadcast_to(rows[:, np.newaxis], mask.shape)[mask]
        j = np.broadcast_to(columns[np.newaxis, :], mask.shape)[mask]

        dilations = geo.pair_dilations(coords, center_dist, i, j)
        k = int(np.argmax(dilations))
        if dilations[k] > best[0]:
            best = (dilations[k], i[k], j[k])

    return DilationReport(best[0], best[1], best[2], candidate_count=n * (n - 1) // 2)


def all_knn(points, k):
    """Exact k nearest neighbours of every leaf.

    Parameters
    ----------
    points : PointSet
    k : number of neighbours; clamped to n - 1

    Returns
    -------
    neighbors : (n, k) integer array, each row ordered by distance then index
    """

    coords = _coords(points)
    n = len(coords)

    if k < 1:
        raise er.InputError("k must be at least 1, got %r" % k)

    if n < 2:
        return np.empty((n, 0), dtype=int)

    if k >= n:
        logging.debug("clamping k=%d to n-1=%d", k, n - 1)
        k = n - 1

    tree = cKDTree(coords)
    query_k = min(k + 2, n)
    dist, idx = tree.query(coords, k=query_k)

    order = np.lexsort((idx, dist), axis=1)
    dist = np.take_along_axis(dist, order, axis=1)
    idx = np.take_along_axis(idx, order, axis=1)

    # column 0 is the point itself, the only one at distance zero
    neighbors = idx[:, 1:k + 1].copy()

    if query_k > k + 1:
        tied = np.flatnonzero(dist[:, k] == dist[:, k + 1])
        for row in tied:
            # points exactly on the k-th radius may fall outside it after rounding
            radius = dist[row, k] * (1. + KNN_TIE_SLACK)
            ball = np.array(tree.query_ball_point(coords[row], radius), dtype=int)
            ball = ball[ball != row]
            ball_dist = geo.distances_to(coords[ball], coords[row])
            ball = ball[np.lexsort((ball, ball_dist))]
            neighbors[row] = ball[:k]

    return neighbors


def candidates_high(points, consts):
    """Pairs of each leaf with its knn_k nearest neighbours."""

    points = _point_set(points)
    n = points.n
    if n < 2:
        return np.empty((0, 2), dtype=int)

    neighbors = all_knn(points, consts.knn_k)
    rows = np.repeat(np.arange(n), neighbors.shape[1])
    return unique_pairs(rows, neighbors.ravel())


def distance_ranks(points, center):
    """Leaf indexes sorted by distance from center, ties by index."""

    coords = _coords(points)
    center_dist = geo.distances_to(coords, center)
    return np.lexsort((np.arange(len(coords)), center_dist))


def rank_window_pairs(order, window):
    """Pairs of entries of order whose positions differ by at most window."""

    n = len(order)
    i, j = [], []
    for offset in range(1, min(window, n - 1) + 1):
        i.append(order[:n - offset])
        j.append(order[offset:])
    if not i:
        return np.empty((0, 2), dtype=int)
    return unique_pairs(np.concatenate(i), np.concatenate(j))


def candidates_low(points, center, consts):
    """Pairs of leaves within rank_window_l ranks in the distance order about center."""

    points = _point_set(points)
    center = _center(center, points.dim)
    if points.n < 2:
        return np.empty((0, 2), dtype=int)

    return rank_window_pairs(distance_ranks(points, center), consts.rank_window_l)


def candidate_pairs(points, center, consts):
    """Union of the high and low dilation candidates."""

    points = _point_set(points)
    high = candidates_high(points, consts)
    low = candidates_low(points, center, consts)
    return unique_pairs(np.concatenate([high[:, 0], low[:, 0]]),
                        np.concatenate([high[:, 1], low[:, 1]]))


def evaluate_fast(points, center, consts=None):
    """Dilation of a star from O(n) candidate pairs.

    The k nearest neighbour pairs cover stars of high dilation, the distance
    rank window covers stars of low dilation; both are always scored.

    Parameters
    ----------
    points : PointSet of leaves
    center : star center
    consts : EvalConstants (optional, default ``fast`` profile)

    Returns
    -------
    DilationReport
    """

    points = _point_set(points)
    coords = points.coords
    n = points.n
    center = _center(center, points.dim)

    if consts is None:
        consts = EvalConstants.from_profile("fast", points.dim)

    if n < 2:
        return DilationReport(1.)

    pairs = candidate_pairs(points, center, consts)
    center_dist = geo.distances_to(coords, center)
    dilations = geo.pair_dilations(coords, center_dist, pairs[:, 0], pairs[:, 1])

    dilation, a, b = _best_pair(dilations, pairs)
    logging.debug("scored %d candidate pairs for %d leaves", len(pairs), n)

    return DilationReport(dilation, a, b, candidate_count=len(pairs))


def rho_from_dilation(dilation):
    """Annulus ratio just above sqrt((D+1)/(D-1)) for a measured dilation D."""

    dilation = max(dilation, 1. + 1e-6)
    return np.sqrt((dilation + 1.) / (dilation - 1.)) + 1e-6


def theta_min(dilation, rho):
    """Smallest apex angle at the center between two leaves of one annulus."""

    cos_theta = rho / 2. + 1. / (2. * rho) - (1. + rho) ** 2 / (2. * rho * dilation ** 2)
    return float(np.arccos(np.clip(cos_theta, -1., 1.)))


def annulus_indexes(coords, center, rho):
    """floor(log_rho |p center|) for every row; exact powers of rho land on their own index."""

    if not rho > 1:
        raise er.InputError("annulus ratio must exceed 1, got %r" % rho)

    radius = geo.distances_to(np.atleast_2d(coords), center)
    if np.any(radius == 0):
        raise er.InputError("annulus index is undefined at the center")

    index = np.floor(np.log(radius) / np.log(rho)).astype(int)
    index += (rho ** (index + 1.) <= radius).astype(int)
    index -= (rho ** index.astype(float) > radius).astype(int)
    return index


def annulus_index(p, center, rho):
    """Index i of the annulus rho^i <= |p center| < rho^(i+1) containing p."""

    p = geo.as_point(p)
    return int(annulus_indexes(p[np.newaxis, :], geo.as_point(center, dim=p.size), rho)[0])


def annulus_populations(points, center, rho):
    """Number of leaves per annulus index about center (leaves at the center are skipped)."""

    coords = _coords(points)
    center = _center(center, coords.shape[1])
    coords = coords[geo.distances_to(coords, center) > 0]
    if len(coords) == 0:
        return {}
    index, counts = np.unique(annulus_indexes(coords, center, rho), return_counts=True)
    return dict(zip(index.tolist(), counts.tolist()))


def witness_annulus_gap(points, center, report):
    """Annulus index gap of the witness pair with rho taken from the measured dilation."""

    coords = _coords(points)
    if report.witness_a == NO_WITNESS:
        return 0

    rho = rho_from_dilation(report.dilation)
    index = annulus_indexes(coords[[report.witness_a, report.witness_b]], center, rho)
    return int(abs(index[1] - index[0]))


def witness_neighbor_rank(points, report):
    """1-based rank of witness_b among the neighbours of witness_a (distance, then index)."""

    coords = _coords(points)
    if report.witness_a == NO_WITNESS:
        return 0

    a = report.witness_a
    others = np.delete(np.arange(len(coords)), a)
    dist = geo.distances_to(coords[others], coords[a])
    ordered = others[np.lexsort((others, dist))]
    return int(np.flatnonzero(ordered == report.witness_b)[0]) + 1
