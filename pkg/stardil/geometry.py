from __future__ import absolute_import
import numpy as np
from . import error as er

# relative tolerance for boundary comparisons
EPS_GEOM = 1e-9


def as_point(coords, dim=None):
    """Validate coordinates and return them as a read-only point.

    Parameters
    ----------
    coords : sequence of d real coordinates
    dim : expected dimension (optional)

    Returns
    -------
    point : read-only 1-D numpy array of floats
    """

    point = np.array(coords, dtype=float)

    if point.ndim != 1:
        raise er.InputError("a point must be a flat sequence of coordinates, got shape %s" % (point.shape,))

    if point.size < 2:
        raise er.InputError("points need at least 2 coordinates, got %d" % point.size)

    if not np.all(np.isfinite(point)):
        raise er.InputError("point has non-finite coordinates: %s" % point)

    if dim is not None and point.size != dim:
        raise er.InputError("dimension mismatch: expected %d coordinates, got %d" % (dim, point.size))

    point.flags.writeable = False
    return point


def find_duplicate(coords):
    """Locate the first exactly repeated row.

    Returns
    -------
    (first, repeat) : indexes of the earlier and the later copy, or None
    """

    if len(coords) < 2:
        return None

    order = np.lexsort(coords.T[::-1])
    ordered = coords[order]
    same = np.all(ordered[1:] == ordered[:-1], axis=1)
    if not np.any(same):
        return None

    pairs = [tuple(sorted((order[k], order[k + 1]))) for k in np.flatnonzero(same)]
    return min(pairs, key=lambda p: (p[1], p[0]))


class PointSet(object):
    """Ordered, validated leaves of a star."""

    def __init__(self, coords, dim=None):
        coords = np.array(coords, dtype=float)

        if coords.size == 0:
            if dim is None:
                raise er.InputError("an empty point set needs an explicit dimension")
            coords = coords.reshape(0, dim)

        if coords.ndim != 2:
            raise er.InputError("point set must be an (n, d) array, got shape %s" % (coords.shape,))

        if dim is not None and coords.shape[1] != dim:
            raise er.InputError("dimension mismatch: expected %d, got %d" % (dim, coords.shape[1]))

        if coords.shape[1] < 2:
            raise er.InputError("points need at least 2 coordinates, got %d" % coords.shape[1])

        if not np.all(np.isfinite(coords)):
            raise er.InputError("point set has non-finite coordinates")

        duplicate = find_duplicate(coords)
        if duplicate is not None:
            raise er.InputError("points %d and %d coincide" % duplicate)

        coords.flags.writeable = False
        self._coords = coords

    @property
    def coords(self):
        return self._coords

    @property
    def n(self):
        return self._coords.shape[0]

    @property
    def dim(self):
        return self._coords.shape[1]

    def __len__(self):
        return self.n

    def __getitem__(self, index):
        return self._coords[index]

    def __iter__(self):
        return iter(self._coords)

    def __repr__(self):
        return "PointSet(n=%d, dim=%d)" % (self.n, self.dim)

    def centroid(self):
        return as_point(self._coords.mean(axis=0))

    def subset(self, indexes):
        return PointSet(self._coords[np.asarray(indexes, dtype=int)], dim=self.dim)

    def without(self, index):
        keep = np.ones(self.n, dtype=bool)
        keep[index] = False
        return PointSet(self._coords[keep], dim=self.dim)


def _row_norms(diff):
    # fixed summation order so that every caller gets bit-identical norms
    sq = diff[:, 0] * diff[:, 0]
    for k in range(1, diff.shape[1]):
        sq = sq + diff[:, k] * diff[:, k]
    return np.sqrt(sq)


def distances_to(coords, center):
    """Euclidean distance of every row of coords to center."""
    return _row_norms(np.asarray(coords, dtype=float) - np.asarray(center, dtype=float))


def distance(a, b):
    """Euclidean distance |ab|.

    Parameters
    ----------
    a, b : points of equal dimension

    Returns
    -------
    distance : float
    """

    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape:
        raise er.InputError("dimension mismatch: %s vs %s" % (a.shape, b.shape))

    return float(_row_norms((a - b)[np.newaxis, :])[0])


def pair_dilations(coords, center_dist, i, j):
    """Dilation (|ac| + |cb|) / |ab| for index arrays of leaf pairs.

    Brute force and candidate-based evaluation both score pairs here, so the
    two agree to the last bit on the same pair.

    Parameters
    ----------
    coords : (n, d) array of leaves
    center_dist : (n,) distances of the leaves to the center
    i, j : index arrays of equal length

    Returns
    -------
    dilations : numpy array of floats
    """

    i = np.asarray(i, dtype=int)
    j = np.asarray(j, dtype=int)
    ab = _row_norms(coords[i] - coords[j])
    return (center_dist[i] + center_dist[j]) / ab


def pair_dilation(a, b, c):
    """Dilation between leaves a and b of the star centered at c."""

    a = as_point(a)
    b = as_point(b, dim=a.size)
    c = as_point(c, dim=a.size)

    if np.array_equal(a, b):
        raise er.UndefinedDilationError("dilation is undefined for coincident points %s" % a)

    coords = np.vstack([a, b])
    return float(pair_dilations(coords, distances_to(coords, c), [0], [1])[0])


class Ellipse(object):
    """Level set {x : |x focus_a| + |x focus_b| <= dilation_level * |focus_a focus_b|}."""

    __slots__ = ("focus_a", "focus_b", "dilation_level", "focal_distance", "sum_bound")

    def __init__(self, focus_a, focus_b, dilation_level):
        self.focus_a = focus_a
        self.focus_b = focus_b
        self.dilation_level = float(dilation_level)
        self.focal_distance = distance(focus_a, focus_b)
        self.sum_bound = self.dilation_level * self.focal_distance

    @property
    def dim(self):
        return self.focus_a.size

    @property
    def center(self):
        return (self.focus_a + self.focus_b) / 2.

    @property
    def semi_major(self):
        return self.sum_bound / 2.

    @property
    def semi_minor(self):
        lam = self.dilation_level
        return (self.focal_distance / 2.) * np.sqrt(max(lam * lam - 1., 0.))

    @property
    def rotation(self):
        """Angle of the major axis (2-D only)."""
        if self.dim != 2:
            raise er.UnsupportedDimensionError("rotation is defined for planar ellipses only")
        delta = self.focus_b - self.focus_a
        return float(np.arctan2(delta[1], delta[0]))

    def __repr__(self):
        return "Ellipse(focus_a=%s, focus_b=%s, dilation_level=%r)" % (
            list(self.focus_a), list(self.focus_b), self.dilation_level)


def ellipse_from_pair(v_i, v_j, lam):
    """Level set of the pair constraint f_ij at dilation lam.

    Parameters
    ----------
    v_i, v_j : distinct foci
    lam : dilation level, at least 1

    Returns
    -------
    Ellipse
    """

    v_i = as_point(v_i)
    v_j = as_point(v_j, dim=v_i.size)

    if not lam >= 1.:
        raise er.EmptyLevelSetError("dilation level %r < 1 has an empty level set" % lam)

    if np.array_equal(v_i, v_j):
        raise er.InputError("ellipse foci coincide at %s" % v_i)

    return Ellipse(v_i, v_j, lam)


def focal_sums(e, points):
    """|p focus_a| + |p focus_b| for each row of points."""
    points = np.atleast_2d(np.asarray(points, dtype=float))
    return distances_to(points, e.focus_a) + distances_to(points, e.focus_b)


def ellipse_contains(e, p, tol=EPS_GEOM):
    """True if p lies in the closed level set, up to a relative tolerance."""

    p = np.asarray(p, dtype=float)
    if p.shape != e.focus_a.shape:
        raise er.InputError("dimension mismatch: %s vs %s" % (p.shape, e.focus_a.shape))

    return bool(focal_sums(e, p)[0] <= e.sum_bound * (1. + tol))
