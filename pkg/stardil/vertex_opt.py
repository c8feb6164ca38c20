from __future__ import absolute_import
import logging
import numpy as np
from . import geometry as geo
from . import star_eval as se
from . import center_opt as co
from . import arc_ring as ar
from . import error as er

# leaves per point admitted from the annulus and inner-disk categories, in units of knn_k
INNER_CAP_FACTOR = 4

# added to sqrt((G+1)/(G-1)) for the annuli about the unconstrained optimum
ANNULUS_RHO_MARGIN = 0.1


class RegionSelection(object):
    """Pair ellipses at level Delta_c that bound the region of better centers."""

    def __init__(self, pairs, ellipses, fallback=False):
        self.pairs = pairs
        self.ellipses = ellipses
        self.fallback = fallback

    def __len__(self):
        return len(self.ellipses)

    def __iter__(self):
        return iter(self.ellipses)

    def __getitem__(self, index):
        return self.ellipses[index]


class ConstrainedResult(object):
    """Best star center among the input points."""

    def __init__(self, center_index, center, dilation, loop_iterations, pruned_counts,
                 method, seed=None, fallback=False, c_opt=None, evaluated=None):
        self.center_index = int(center_index)
        self.center = np.asarray(center, dtype=float)
        self.dilation = float(dilation)
        self.loop_iterations = int(loop_iterations)
        self.pruned_counts = list(pruned_counts)
        self.method = method
        self.seed = seed
        self.fallback = bool(fallback)
        self.c_opt = None if c_opt is None else np.asarray(c_opt, dtype=float)
        self.evaluated = list(evaluated or [])

    def as_dict(self):
        return dict(center_index=self.center_index,
                    center=self.center.tolist(),
                    dilation=self.dilation,
                    iterations=self.loop_iterations,
                    pruned_counts=self.pruned_counts,
                    method=self.method,
                    seed=self.seed,
                    fallback=self.fallback)

    def __repr__(self):
        return "ConstrainedResult(center_index=%d, dilation=%r)" % (self.center_index, self.dilation)


def annulus_rho(gamma_threshold):
    return np.sqrt((gamma_threshold + 1.) / (gamma_threshold - 1.)) + ANNULUS_RHO_MARGIN


def _inner_leaves(coords, c, c_opt, gamma_threshold):
    """Leaves in the two annuli about c_opt at the scale of |c c_opt|, and leaves closer than it."""

    x = geo.distance(c, c_opt)
    if x == 0:
        return np.array([], dtype=int)

    rho = annulus_rho(gamma_threshold)
    i = se.annulus_index(c, c_opt, rho)
    dist = geo.distances_to(coords, c_opt)

    in_annuli = (dist >= rho ** i) & (dist < rho ** (i + 2))
    closer = dist < x
    return np.flatnonzero(in_annuli | closer)


def select_region_ellipses(points, c, delta_c, c_opt, consts=None):
    """Ellipses f_ij <= delta_c of the O(n) pairs that can bound the region of better centers.

    Nearest-neighbour pairs and pairs within twice the rank window about c_opt
    are taken at every level. Every leaf is also paired with the leaves in the
    annuli about c_opt at the scale of |c c_opt| and with the leaves closer to
    c_opt than that, whichever side of the threshold delta_c is on.

    Parameters
    ----------
    points : planar PointSet
    c : current center
    delta_c : its dilation, above 1
    c_opt : unconstrained optimum
    consts : EvalConstants (optional)

    Returns
    -------
    RegionSelection; ``fallback`` is set when the inner categories overflowed
    their cap and were truncated
    """

    points = co._point_set(points)
    coords = points.coords

    if points.dim != 2:
        raise er.UnsupportedDimensionError("region selection is implemented for planar points only")

    if not delta_c > 1:
        raise er.EmptyLevelSetError("the region at dilation %r is empty" % delta_c)

    if consts is None:
        consts = se.EvalConstants.from_profile("fast", 2)

    c = geo.as_point(c, dim=2)
    c_opt = geo.as_point(c_opt, dim=2)

    window = se.EvalConstants(consts.gamma_threshold, consts.knn_k, 2 * consts.rank_window_l)
    groups = [se.candidates_high(coords, consts), se.candidates_low(coords, c_opt, window)]

    fallback = False
    inner = _inner_leaves(coords, c, c_opt, consts.gamma_threshold)
    cap = INNER_CAP_FACTOR * consts.knn_k
    if len(inner) > cap:
        logging.warning("region selection: %d leaves near the optimum exceed the cap of %d", len(inner), cap)
        fallback = True
        order = np.argsort(geo.distances_to(coords[inner], c_opt), kind="stable")
        inner = inner[order[:cap]]
    if len(inner):
        i, j = np.meshgrid(np.arange(points.n), inner, indexing="ij")
        groups.append(np.column_stack([i.ravel(), j.ravel()]))

    pairs = np.vstack(groups)
    pairs = se.unique_pairs(pairs[:, 0], pairs[:, 1])
    ellipses = [geo.Ellipse(coords[a], coords[b], delta_c) for a, b in pairs]

    logging.debug("region selection: %d ellipses at level %.12g", len(ellipses), delta_c)

    return RegionSelection(pairs, ellipses, fallback)


def _direct_membership(coords, selection, tol):
    """Membership test against every selected ellipse, boundary handled like the arc ring."""

    inside = np.ones(len(coords), dtype=bool)
    if len(selection) == 0:
        return inside

    foci_a = np.array([e.focus_a for e in selection])
    foci_b = np.array([e.focus_b for e in selection])
    bound = np.array([e.sum_bound for e in selection]) * (1. - tol)

    for row, p in enumerate(coords):
        sums = geo.distances_to(foci_a, p) + geo.distances_to(foci_b, p)
        inside[row] = np.all(sums < bound)

    return inside


def _vertex_dilation(points, index, consts):
    return se.evaluate_fast(points.without(index), points[index], consts).dilation


def solve_constrained(points, cfg=None, consts=None, rng_seed=None):
    """Best star center among the input points by random pivoting and region pruning.

    Each iteration evaluates a random remaining candidate c and keeps only the
    candidates lying inside the region of centers better than the best found,
    an intersection of O(n) ellipses represented by its arc ring about the
    unconstrained optimum.

    Parameters
    ----------
    points : planar PointSet, n >= 3
    cfg : QcpConfig for the unconstrained optimum (optional)
    consts : EvalConstants (optional, default ``fast`` profile)
    rng_seed : pivot seed (optional, default cfg.rng_seed)

    Returns
    -------
    ConstrainedResult
    """

    points = co._point_set(points)
    cfg = cfg or co.QcpConfig()

    if points.dim != 2:
        raise er.UnsupportedDimensionError("the fast constrained solver is planar, got d=%d" % points.dim)

    if points.n < 3:
        raise er.InputError("a constrained center needs at least 3 points, got %d" % points.n)

    if consts is None:
        consts = se.EvalConstants.from_profile("fast", 2)

    seed = cfg.rng_seed if rng_seed is None else int(rng_seed)
    rng = np.random.RandomState(seed)
    coords = points.coords
    n = points.n

    iteration_cap = 8 * int(np.ceil(np.log2(n))) + 8

    opt = co.solve_chan(points, cfg, consts)
    c_opt = opt.center
    delta_opt = co.objective(points, c_opt, consts)

    alive = np.arange(n)
    best_index, best_value = -1, np.inf
    evaluated = []
    pruned_counts = []
    fallback = opt.fallback
    iterations = 0

    while len(alive):
        if iterations >= iteration_cap:
            logging.warning("constrained loop hit its cap of %d iterations, scoring %d candidates directly",
                            iteration_cap, len(alive))
            fallback = True
            for index in alive:
                value = _vertex_dilation(points, index, consts)
                if value < best_value or (value == best_value and index < best_index):
                    best_index, best_value = index, value
            alive = alive[:0]
            break

        iterations += 1
        c = alive[rng.randint(len(alive))]
        alive = alive[alive != c]

        value = _vertex_dilation(points, c, consts)
        evaluated.append(value)
        if value < best_value or (value == best_value and c < best_index):
            best_index, best_value = c, value

        logging.debug("constrained loop %d: candidate %d has dilation %.12g, best %.12g",
                      iterations, c, value, best_value)

        if delta_opt >= best_value * (1. - geo.EPS_GEOM) or not len(alive):
            pruned_counts.append(len(alive))
            break

        selection = select_region_ellipses(points, coords[best_index], best_value, c_opt, consts)
        fallback = fallback or selection.fallback

        try:
            ring = ar.build_arc_ring(selection.ellipses, c_opt)
            keep = ar.arc_ring_contains_many(ring, coords[alive], tol=-geo.EPS_GEOM)
        except (er.InteriorityError, er.SolverError) as e:
            logging.warning("arc ring unavailable (%s), testing membership against the ellipses directly", e)
            fallback = True
            keep = _direct_membership(coords[alive], selection, -geo.EPS_GEOM)

        alive = alive[keep]
        pruned_counts.append(len(alive))

    logging.info("constrained center %d: dilation %.12g after %d iterations", best_index, best_value, iterations)

    return ConstrainedResult(best_index, coords[best_index], best_value, iterations, pruned_counts, "fast",
                             seed=seed, fallback=fallback, c_opt=c_opt, evaluated=evaluated)


def solve_constrained_brute(points):
    """Best star center among the input points by evaluating every one of them.

    Ties go to the lowest index.
    """

    points = co._point_set(points)
    if points.n < 3:
        raise er.InputError("a constrained center needs at least 3 points, got %d" % points.n)

    values = np.array([se.evaluate_brute(points.without(k), points[k]).dilation for k in range(points.n)])
    best = int(np.argmin(values))

    return ConstrainedResult(best, points[best], values[best], points.n, [], "brute", evaluated=values.tolist())
