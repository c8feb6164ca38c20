from __future__ import absolute_import
import logging
import numpy as np
from scipy.optimize import brentq
from . import geometry as geo
from . import conic
from . import error as er

TWO_PI = 2. * np.pi

# arc endpoints closer than this are merged
EPS_ANGLE = 1e-12

# generous linear bound on the envelope size, in arcs per ellipse
ARC_COUNT_FACTOR = 64

# sign probes per elementary interval backing up the conic crossings
_PROBES = 5


def normalize_angle(theta):
    """Angles folded into [0, 2 pi)."""
    theta = np.mod(theta, TWO_PI)
    return np.where(theta >= TWO_PI, 0., theta)


def angle_about(points, r):
    """Angle of each point about r, in [0, 2 pi)."""
    diff = np.atleast_2d(np.asarray(points, dtype=float)) - r
    return normalize_angle(np.arctan2(diff[:, 1], diff[:, 0]))


class Arc(object):
    """Angular range [theta_lo, theta_hi] on which one ellipse bounds the region."""

    __slots__ = ("ellipse_id", "theta_lo", "theta_hi")

    def __init__(self, ellipse_id, theta_lo, theta_hi):
        assert theta_lo <= theta_hi
        self.ellipse_id = int(ellipse_id)
        self.theta_lo = float(theta_lo)
        self.theta_hi = float(theta_hi)

    def __repr__(self):
        return "Arc(%d, %.9f, %.9f)" % (self.ellipse_id, self.theta_lo, self.theta_hi)


class RadialFunction(object):
    """Distance from an interior point r to an ellipse boundary, as a function of direction."""

    def __init__(self, e, r):
        if e.dim != 2:
            raise er.UnsupportedDimensionError("radial boundaries are defined for planar ellipses only")

        r = geo.as_point(r, dim=2)
        if not geo.focal_sums(e, r)[0] < e.sum_bound:
            raise er.InteriorityError("reference point %s is not strictly inside %r" % (r.tolist(), e))

        phi = e.rotation
        self._cos, self._sin = np.cos(phi), np.sin(phi)
        rel = r - e.center
        self._rx = self._cos * rel[0] + self._sin * rel[1]
        self._ry = -self._sin * rel[0] + self._cos * rel[1]
        self._ia = 1. / e.semi_major ** 2
        self._ib = 1. / e.semi_minor ** 2
        self.ellipse = e
        self.ref_point = r

    def __call__(self, theta):
        theta = np.asarray(theta, dtype=float)
        ux, uy = np.cos(theta), np.sin(theta)
        vx = self._cos * ux + self._sin * uy
        vy = -self._sin * ux + self._cos * uy

        qa = vx * vx * self._ia + vy * vy * self._ib
        qb = 2. * (self._rx * vx * self._ia + self._ry * vy * self._ib)
        qc = self._rx * self._rx * self._ia + self._ry * self._ry * self._ib - 1.

        root = np.sqrt(qb * qb - 4. * qa * qc)
        # qc < 0: exactly one positive root, picked without cancellation
        return np.where(qb <= 0, (root - qb) / (2. * qa), -2. * qc / (qb + root))


def radial_boundary(e, r, theta):
    """Distance t > 0 such that r + t (cos theta, sin theta) lies on the boundary of e.

    Parameters
    ----------
    e : planar Ellipse
    r : point strictly inside e
    theta : direction in radians

    Returns
    -------
    distance : float
    """

    return float(RadialFunction(e, r)(theta))


class ArcRing(object):
    """Boundary of an intersection of ellipses seen from an interior reference point.

    ``starts[k]`` is the angle at which arc k begins and ``owners[k]`` the index
    of the ellipse bounding the region until the next start (or 2 pi).
    """

    def __init__(self, ref_point, starts, owners, ellipses, radial=None):
        starts = np.asarray(starts, dtype=float)
        owners = np.asarray(owners, dtype=int)

        assert len(starts) == len(owners) > 0
        assert starts[0] == 0.
        assert np.all(np.diff(starts) > 0) and starts[-1] < TWO_PI

        self.ref_point = geo.as_point(ref_point, dim=2)
        self.starts = starts
        self.owners = owners
        self.ellipses = list(ellipses)
        self._radial = radial if radial is not None else {}

    def __len__(self):
        return len(self.starts)

    def radial(self, ellipse_id):
        if ellipse_id not in self._radial:
            self._radial[ellipse_id] = RadialFunction(self.ellipses[ellipse_id], self.ref_point)
        return self._radial[ellipse_id]

    @property
    def arcs(self):
        ends = np.append(self.starts[1:], TWO_PI)
        return [Arc(o, lo, hi) for o, lo, hi in zip(self.owners, self.starts, ends)]

    def arc_index(self, theta):
        """Index of the arc covering each angle, by binary search."""
        index = np.searchsorted(self.starts, normalize_angle(theta), side="right") - 1
        return np.clip(index, 0, len(self.starts) - 1)

    def radius(self, theta):
        """Envelope radius at each angle."""

        theta = normalize_angle(np.atleast_1d(np.asarray(theta, dtype=float)))
        owner = self.owners[self.arc_index(theta)]
        radius = np.empty(len(theta))
        for o in np.unique(owner):
            mask = owner == o
            radius[mask] = self.radial(o)(theta[mask])
        return radius

    def polyline(self, samples=720):
        """Closed boundary polyline, arc endpoints included."""

        theta = np.union1d(np.linspace(0., TWO_PI, samples, endpoint=False), self.starts)
        theta = np.append(theta, 0.)
        radius = self.radius(theta)
        return self.ref_point + radius[:, np.newaxis] * np.column_stack([np.cos(theta), np.sin(theta)])


class _EnvelopeBuilder(object):

    def __init__(self, ellipses, r):
        self.ellipses = ellipses
        self.r = r
        self.radial = {}
        self._crossings = {}
        self._conics = {}

    def radius(self, i, theta):
        if i not in self.radial:
            self.radial[i] = RadialFunction(self.ellipses[i], self.r)
        return self.radial[i](theta)

    def conic(self, i):
        if i not in self._conics:
            e = self.ellipses[i]
            local = geo.Ellipse(e.focus_a - self.r, e.focus_b - self.r, e.dilation_level)
            self._conics[i] = conic.ellipse_to_conic(local)
        return self._conics[i]

    def crossings(self, i, j):
        key = (min(i, j), max(i, j))
        if key not in self._crossings:
            hits = conic.conic_intersections(self.conic(key[0]), self.conic(key[1]))
            if hits.degenerate or len(hits) == 0:
                angles = np.array([])
            else:
                angles = np.sort(angle_about(hits.points, np.zeros(2)))
            self._crossings[key] = angles
        return self._crossings[key]

    def split(self, i, j, t0, t1):
        """Cut angles in (t0, t1) at which the nearer of ellipses i, j changes."""

        angles = self.crossings(i, j)
        cuts = list(angles[(angles > t0 + EPS_ANGLE) & (angles < t1 - EPS_ANGLE)])

        def gap(t):
            return float(self.radius(i, t) - self.radius(j, t))

        # sign probes catch crossings the conic solve lost
        grid = np.unique(np.concatenate([[t0, t1], cuts]))
        extra = []
        for u0, u1 in zip(grid[:-1], grid[1:]):
            probes = np.linspace(u0, u1, _PROBES + 2)[1:-1]
            values = self.radius(i, probes) - self.radius(j, probes)
            for k in np.flatnonzero(np.sign(values[:-1]) * np.sign(values[1:]) < 0):
                extra.append(brentq(gap, probes[k], probes[k + 1], xtol=1e-15))

        if extra:
            logging.debug("envelope of ellipses %d, %d: %d crossings recovered by sign probes", i, j, len(extra))

        return np.unique(np.concatenate([cuts, extra]))

    def merge(self, left, right):
        starts_l, owners_l = left
        starts_r, owners_r = right

        bounds = np.union1d(starts_l, starts_r)
        ends = np.append(bounds[1:], TWO_PI)
        pieces_start = []
        pieces_owner = []

        for t0, t1 in zip(bounds, ends):
            if t1 - t0 <= EPS_ANGLE and t0 > 0:
                continue
            mid = (t0 + t1) / 2.
            a = owners_l[np.searchsorted(starts_l, mid, side="right") - 1]
            b = owners_r[np.searchsorted(starts_r, mid, side="right") - 1]

            if a == b:
                pieces_start.append(t0)
                pieces_owner.append(a)
                continue

            grid = np.concatenate([[t0], self.split(a, b, t0, t1), [t1]])
            for u0, u1 in zip(grid[:-1], grid[1:]):
                if u1 - u0 <= EPS_ANGLE and u0 > t0:
                    continue
                um = (u0 + u1) / 2.
                ra, rb = self.radius(a, um), self.radius(b, um)
                owner = a if ra < rb or (ra == rb and a < b) else b
                pieces_start.append(u0)
                pieces_owner.append(owner)

        starts = np.array(pieces_start)
        owners = np.array(pieces_owner, dtype=int)

        keep = np.concatenate([np.diff(starts) > EPS_ANGLE, [True]])
        keep[0] = True
        starts, owners = starts[keep], owners[keep]

        keep = np.concatenate([[True], owners[1:] != owners[:-1]])
        return starts[keep], owners[keep]

    def envelope(self, ids):
        if len(ids) == 1:
            return np.array([0.]), np.array([ids[0]], dtype=int)
        half = len(ids) // 2
        return self.merge(self.envelope(ids[:half]), self.envelope(ids[half:]))


def prune_dominated(ellipses, r):
    """Indexes of ellipses that can bound the intersection seen from r.

    An ellipse whose nearest boundary point is farther from r than the
    farthest boundary point of some other ellipse never reaches the envelope.
    """

    r = np.asarray(r, dtype=float)
    sums = np.array([e.sum_bound for e in ellipses])
    to_a = geo.distances_to(np.array([e.focus_a for e in ellipses]), r)
    to_b = geo.distances_to(np.array([e.focus_b for e in ellipses]), r)
    centers = np.array([e.center for e in ellipses])

    nearest = (sums - to_a - to_b) / 2.
    farthest = geo.distances_to(centers, r) + sums / 2.

    return np.flatnonzero(nearest <= np.min(farthest) * (1. + geo.EPS_GEOM))


def build_arc_ring(ellipses, r):
    """Arc ring of the intersection of planar ellipses about an interior point.

    The lower radial envelope of the ellipses is computed by recursive halving
    and a linear merge of the two sub-envelopes, splitting merged intervals at
    the angles where the two competing ellipses cross.

    Parameters
    ----------
    ellipses : nonempty list of planar Ellipse
    r : point strictly inside every ellipse

    Returns
    -------
    ArcRing
    """

    ellipses = list(ellipses)
    if not ellipses:
        raise er.InputError("an arc ring needs at least one ellipse")

    r = geo.as_point(r)
    if r.size != 2 or any(e.dim != 2 for e in ellipses):
        raise er.UnsupportedDimensionError("arc rings are built for planar ellipses only")

    for k, e in enumerate(ellipses):
        if not geo.focal_sums(e, r)[0] < e.sum_bound:
            raise er.InteriorityError("reference point %s is not strictly inside ellipse %d" % (r.tolist(), k))

    ids = prune_dominated(ellipses, r)
    builder = _EnvelopeBuilder(ellipses, r)
    starts, owners = builder.envelope(list(ids))

    if len(starts) > ARC_COUNT_FACTOR * len(ellipses):
        raise er.SolverError("arc ring has %d arcs for %d ellipses" % (len(starts), len(ellipses)),
                             diagnostics=dict(arcs=len(starts), ellipses=len(ellipses)))

    logging.debug("arc ring: %d arcs from %d ellipses (%d after pruning)", len(starts), len(ellipses), len(ids))

    return ArcRing(r, starts, owners, ellipses, radial=builder.radial)


def arc_ring_contains_many(ring, points, tol=geo.EPS_GEOM):
    """Membership of each point in the region bounded by the ring.

    A point p is inside when |p r| < radius(theta) * (1 - tol): positive tol
    demands strict interiority, negative tol keeps points on the boundary.
    """

    points = np.atleast_2d(np.asarray(points, dtype=float))
    if points.shape[1] != 2:
        raise er.InputError("arc ring membership needs planar points")

    dist = geo.distances_to(points, ring.ref_point)
    inside = dist == 0

    probe = ~inside
    if np.any(probe):
        radius = ring.radius(angle_about(points[probe], ring.ref_point))
        inside[probe] = dist[probe] < radius * (1. - tol)

    return inside


def arc_ring_contains(ring, p, tol=geo.EPS_GEOM):
    """True iff p lies strictly inside the region bounded by the ring."""

    p = geo.as_point(p, dim=2)
    return bool(arc_ring_contains_many(ring, p[np.newaxis, :], tol)[0])
