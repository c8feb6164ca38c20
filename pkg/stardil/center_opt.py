from __future__ import absolute_import
import os
import logging
import numpy as np
import allensdk.core.json_utilities as ju
from scipy.optimize import minimize
from . import geometry as geo
from . import star_eval as se
from . import error as er

DEFAULT_QCP_CONFIG_FILE = os.path.join(os.path.dirname(__file__), 'defaults/qcp_config.json')

# pair constraints added to the working set per round, per dimension
WORKING_SET_GROWTH = 1

# relative slack accepted when reading active pairs off an incumbent
ACTIVE_PAIR_RTOL = 1e-6


def load_default_qcp_config():
    logging.debug("loading default solver settings file: %s", DEFAULT_QCP_CONFIG_FILE)
    return ju.read(DEFAULT_QCP_CONFIG_FILE)


class QcpConfig(object):
    """Numerical settings of the unconstrained center solvers."""

    def __init__(self, eps_opt=None, eps_feas=None, base_case_size=None, rng_seed=None,
                 max_passes=None, max_depth=None, max_feasibility_iterations=None):

        defaults = load_default_qcp_config()

        def pick(value, key):
            return defaults[key] if value is None else value

        self.eps_opt = float(pick(eps_opt, "eps_opt"))
        self.eps_feas = float(pick(eps_feas, "eps_feas"))
        self.base_case_size = int(pick(base_case_size, "base_case_size"))
        self.rng_seed = int(pick(rng_seed, "rng_seed"))
        self.max_passes = int(pick(max_passes, "max_passes"))
        self.max_depth = int(pick(max_depth, "max_depth"))
        self.max_feasibility_iterations = int(pick(max_feasibility_iterations, "max_feasibility_iterations"))

        if not self.eps_opt > 0:
            raise er.InputError("eps_opt must be positive, got %r" % self.eps_opt)
        if not self.eps_feas > 0:
            raise er.InputError("eps_feas must be positive, got %r" % self.eps_feas)
        if self.base_case_size < 4:
            raise er.InputError("base case size must be at least 4, got %d" % self.base_case_size)
        if self.max_passes < 1 or self.max_depth < 1:
            raise er.InputError("pass and depth caps must be positive")

    def as_dict(self):
        return dict(eps_opt=self.eps_opt,
                    eps_feas=self.eps_feas,
                    base_case_size=self.base_case_size,
                    rng_seed=self.rng_seed,
                    max_passes=self.max_passes,
                    max_depth=self.max_depth,
                    max_feasibility_iterations=self.max_feasibility_iterations)


class OptResult(object):
    """Optimal star center found by one of the solvers."""

    METHODS = ("bisection", "chan")

    def __init__(self, center, dilation, witness_a, witness_b, method, iterations,
                 seed=None, decision_calls=0, fallback=False, lower_bound=1., trace=None):
        assert method in self.METHODS
        self.center = np.asarray(center, dtype=float)
        self.dilation = float(dilation)
        self.witness_a = int(witness_a)
        self.witness_b = int(witness_b)
        self.method = method
        self.iterations = int(iterations)
        self.seed = seed
        self.decision_calls = int(decision_calls)
        self.fallback = bool(fallback)
        self.lower_bound = float(lower_bound)
        self.trace = trace if trace is not None else []

    @property
    def witness(self):
        return self.witness_a, self.witness_b

    def as_dict(self):
        return dict(center=self.center.tolist(),
                    dilation=self.dilation,
                    witness=[self.witness_a, self.witness_b],
                    method=self.method,
                    iterations=self.iterations,
                    seed=self.seed,
                    decision_calls=self.decision_calls,
                    fallback=self.fallback,
                    lower_bound=self.lower_bound)

    def __repr__(self):
        return "OptResult(method=%r, dilation=%r, center=%s)" % (self.method, self.dilation, self.center.tolist())


def _point_set(points):
    if isinstance(points, geo.PointSet):
        return points
    return geo.PointSet(points)


def objective(points, x, consts=None):
    """Dilation of the star centered at x: the largest pair function over all leaf pairs."""

    points = _point_set(points)
    if points.n < 2:
        raise er.InputError("the objective needs at least 2 leaves, got %d" % points.n)

    return se.evaluate_fast(points, x, consts).dilation


def decision(points, x, lam, consts=None):
    """True iff the star centered at x has dilation at most lam."""

    if not lam >= 1:
        raise er.EmptyLevelSetError("decision level %r < 1" % lam)

    return objective(points, x, consts) <= lam


class PairConstraints(object):
    """Pair constraints |v_i x| + |x v_j| <= lam * w_ij of the quasiconvex program."""

    def __init__(self, foci_a, foci_b, weights=None):
        foci_a = np.atleast_2d(np.asarray(foci_a, dtype=float))
        foci_b = np.atleast_2d(np.asarray(foci_b, dtype=float))

        if foci_a.shape != foci_b.shape or foci_a.size == 0:
            raise er.InputError("pair constraints need two nonempty focus arrays of equal shape")

        if weights is None:
            weights = geo._row_norms(foci_a - foci_b)
        weights = np.asarray(weights, dtype=float).ravel()

        if len(weights) != len(foci_a):
            raise er.InputError("one weight per pair expected")
        if not np.all(weights > 0):
            raise er.UndefinedDilationError("pair constraint with coincident foci")

        self.foci_a = foci_a
        self.foci_b = foci_b
        self.weights = weights

    @classmethod
    def from_points(cls, coords, pairs=None):
        coords = np.asarray(coords, dtype=float)
        if pairs is None:
            i, j = np.triu_indices(len(coords), k=1)
        else:
            pairs = np.asarray(pairs, dtype=int).reshape(-1, 2)
            i, j = pairs[:, 0], pairs[:, 1]
        return cls(coords[i], coords[j])

    @classmethod
    def from_triples(cls, triples):
        triples = list(triples)
        if not triples:
            raise er.InputError("at least one pair constraint is needed")
        foci_a = np.array([t[0] for t in triples], dtype=float)
        foci_b = np.array([t[1] for t in triples], dtype=float)
        weights = np.array([t[2] for t in triples], dtype=float)
        return cls(foci_a, foci_b, weights)

    def __len__(self):
        return len(self.weights)

    @property
    def dim(self):
        return self.foci_a.shape[1]

    def subset(self, index):
        return PairConstraints(self.foci_a[index], self.foci_b[index], self.weights[index])

    def focal_sums(self, x):
        return geo.distances_to(self.foci_a, x) + geo.distances_to(self.foci_b, x)

    def slack(self, x, lam):
        """|v_i x| + |x v_j| - lam * w_ij for every pair."""
        return self.focal_sums(x) - lam * self.weights

    def levels(self, x):
        """Pair dilation f_ij(x) for every pair."""
        return self.focal_sums(x) / self.weights

    def slack_gradient(self, x):
        da = x - self.foci_a
        db = x - self.foci_b
        na = geo._row_norms(da)[:, np.newaxis]
        nb = geo._row_norms(db)[:, np.newaxis]
        ua = np.divide(da, na, out=np.zeros_like(da), where=na > 0)
        ub = np.divide(db, nb, out=np.zeros_like(db), where=nb > 0)
        return ua + ub


def _minimize_working_set(cons, lam, x0, ftol, maxiter):
    # epigraph form: minimize t subject to t - g_p(x) >= 0 on the working set
    d = cons.dim
    unit = np.zeros(d + 1)
    unit[d] = 1.

    def fun(z):
        return z[d]

    def jac(z):
        return unit

    def con(z):
        return z[d] - cons.slack(z[:d], lam)

    def con_jac(z):
        return np.hstack([-cons.slack_gradient(z[:d]), np.ones((len(cons), 1))])

    z0 = np.append(x0, np.max(cons.slack(x0, lam)))
    res = minimize(fun, z0, jac=jac, method="SLSQP",
                   constraints=[{"type": "ineq", "fun": con, "jac": con_jac}],
                   options={"maxiter": maxiter, "ftol": ftol})

    x = res.x[:d]
    if not np.all(np.isfinite(x)):
        x = x0
    return x, int(res.nit)


def feasibility_min(pairs, lam, eps_feas=None, starts=None, max_iterations=None):
    """Minimize h(x) = max over pairs of |v_i x| + |x v_j| - lam * w_ij.

    The level sets of all pairs intersect iff the minimum is at most zero.
    Constraints enter an active working set, most violated first; each round
    solves the epigraph program of the working set with SLSQP and stops once
    no pair outside the working set exceeds the working-set maximum by more
    than eps_feas.

    Parameters
    ----------
    pairs : PairConstraints or iterable of (v_i, v_j, w_ij)
    lam : dilation level, at least 1
    eps_feas : absolute tolerance on h
    starts : extra start points (optional)
    max_iterations : cap on SLSQP iterations summed over rounds

    Returns
    -------
    x : minimizer
    h : h(x) over all pairs
    """

    if not isinstance(pairs, PairConstraints):
        pairs = PairConstraints.from_triples(pairs)

    if not lam >= 1:
        raise er.EmptyLevelSetError("feasibility level %r < 1" % lam)

    defaults = None
    if eps_feas is None or max_iterations is None:
        defaults = load_default_qcp_config()
    if eps_feas is None:
        eps_feas = defaults["eps_feas"]
    if max_iterations is None:
        max_iterations = defaults["max_feasibility_iterations"]

    # solve in a frame centered on the foci with unit spread
    foci = np.vstack([pairs.foci_a, pairs.foci_b])
    shift = foci.mean(axis=0)
    scale = float(np.max(np.abs(foci - shift))) or 1.
    local = PairConstraints((pairs.foci_a - shift) / scale, (pairs.foci_b - shift) / scale,
                            pairs.weights / scale)
    tol = eps_feas / scale

    candidates = [np.zeros(pairs.dim)]
    worst = np.argsort(-local.slack(candidates[0], lam), kind="stable")[:2]
    candidates.extend((local.foci_a[worst] + local.foci_b[worst]) / 2.)
    if starts is not None:
        candidates.extend((np.atleast_2d(np.asarray(starts, dtype=float)) - shift) / scale)

    x = min(candidates, key=lambda p: np.max(local.slack(p, lam)))
    slack = local.slack(x, lam)

    growth = WORKING_SET_GROWTH * (pairs.dim + 1)
    working = np.argsort(-slack, kind="stable")[:2 * growth]
    in_working = np.zeros(len(local), dtype=bool)
    in_working[working] = True

    best_x, best_h = x, np.max(slack)
    iterations = 0
    rounds = 0

    while True:
        rounds += 1
        x, nit = _minimize_working_set(local.subset(working), lam, x, ftol=min(tol * 1e-2, 1e-12), maxiter=500)
        iterations += nit

        slack = local.slack(x, lam)
        h = np.max(slack)
        if h < best_h:
            best_x, best_h = x, h

        bound = np.max(slack[working]) + tol
        violated = np.flatnonzero((slack > bound) & ~in_working)

        if len(violated) == 0:
            break

        if iterations > max_iterations:
            raise er.SolverError("feasibility minimization did not converge within %d iterations" % max_iterations,
                                 diagnostics=dict(lam=float(lam),
                                                  pairs=len(pairs),
                                                  working_set=int(len(working)),
                                                  rounds=rounds,
                                                  iterations=iterations,
                                                  best_h=float(best_h * scale)))

        add = violated[np.argsort(-slack[violated], kind="stable")[:growth]]
        working = np.concatenate([working, add])
        in_working[add] = True

    logging.debug("feasibility at level %.12g: h=%.3g after %d rounds, %d iterations, %d/%d pairs active",
                  lam, best_h * scale, rounds, iterations, len(working), len(pairs))

    return shift + scale * best_x, float(best_h * scale)


def _support_points(coords, x, lam, dim):
    """Leaves of the d+1 largest pair functions at x that are active at lam."""

    cons = PairConstraints.from_points(coords)
    i, j = np.triu_indices(len(coords), k=1)
    levels = cons.levels(x)
    order = np.argsort(-levels, kind="stable")[:dim + 1]
    order = order[levels[order] >= lam * (1. - ACTIVE_PAIR_RTOL)]
    return np.unique(np.concatenate([i[order], j[order]]))


def _bisect(coords, cfg, start=None):
    """Bisection on the dilation level over all pair constraints.

    Returns
    -------
    x : best center found
    upper : dilation of the star at x
    lower : certified lower bound on the optimum
    steps : number of feasibility problems solved
    """

    cons = PairConstraints.from_points(coords)
    x = coords.mean(axis=0) if start is None else np.asarray(start, dtype=float)
    upper = float(np.max(cons.levels(x)))
    lower = 1.
    steps = 0

    while upper - lower > cfg.eps_opt * lower:
        lam = (lower + upper) / 2.
        candidate, h = feasibility_min(cons, lam, cfg.eps_feas, starts=[x],
                                       max_iterations=cfg.max_feasibility_iterations)
        steps += 1

        if h <= 0:
            # the feasible point usually sits well inside the level set
            value = float(np.max(cons.levels(candidate)))
            x, upper = candidate, value
        else:
            lower = lam

        logging.debug("bisection step %d: [%.15g, %.15g]", steps, lower, upper)

    return x, upper, lower, steps


def solve_bisection(points, cfg=None):
    """Optimal star center by bisection over all O(n^2) pair constraints.

    Parameters
    ----------
    points : PointSet of leaves, n >= 2
    cfg : QcpConfig (optional)

    Returns
    -------
    OptResult
    """

    points = _point_set(points)
    cfg = cfg or QcpConfig()

    if points.n < 2:
        raise er.InputError("the optimal center needs at least 2 leaves, got %d" % points.n)

    x, upper, lower, steps = _bisect(points.coords, cfg)
    report = se.evaluate_brute(points, x)

    logging.info("bisection: dilation %.12g after %d feasibility problems", report.dilation, steps)

    return OptResult(x, report.dilation, report.witness_a, report.witness_b, "bisection", steps,
                     seed=cfg.rng_seed, lower_bound=lower, trace=[(lower, upper)])


class _ChanFallback(Exception):
    pass


class _Incumbent(object):
    __slots__ = ("lam", "x", "support")

    def __init__(self, lam, x, support):
        self.lam = lam
        self.x = x
        self.support = support


class _ChanSolver(object):
    """Randomized reduction of the optimization to decisions on 2/3-size subsets."""

    def __init__(self, coords, cfg, consts):
        self.coords = coords
        self.cfg = cfg
        self.consts = consts
        self.rng = np.random.RandomState(cfg.rng_seed)
        self.decision_calls = 0
        self.subproblems = 0
        self.trace = []
        self.upper = np.inf
        self.lower = 1.

    def decide(self, index, x, lam):
        self.decision_calls += 1
        return se.evaluate_fast(self.coords[index], x, self.consts).dilation <= lam

    def base(self, index):
        coords = self.coords[index]
        x, upper, lower, _ = _bisect(coords, self.cfg)
        support = index[_support_points(coords, x, upper, coords.shape[1])]
        return _Incumbent(upper, x, support)

    def record(self, incumbent, index):
        if len(index) < len(self.coords):
            return
        value = se.evaluate_fast(self.coords, incumbent.x, self.consts).dilation
        self.upper = min(self.upper, value)
        self.lower = max(self.lower, incumbent.lam)
        self.trace.append((self.lower, self.upper))

    def solve(self, index, incumbent=None, depth=0):
        self.subproblems += 1
        n = len(index)

        if depth > self.cfg.max_depth:
            raise _ChanFallback("recursion depth above %d" % self.cfg.max_depth)

        if n <= self.cfg.base_case_size:
            return self.base(index)

        parts = [np.setdiff1d(index, index[r::3]) for r in range(3)]
        order = self.rng.permutation(3)
        eps = self.cfg.eps_opt

        for npass in range(self.cfg.max_passes):
            violated = False
            for r in order:
                part = parts[r]
                if incumbent is not None and self.decide(part, incumbent.x, incumbent.lam * (1. + eps)):
                    continue

                violated = True
                sub = part if incumbent is None else np.union1d(part, incumbent.support)
                if len(sub) >= n:
                    # support points undo the shrink; solve this subproblem directly
                    logging.debug("chan: subproblem of %d leaves solved directly", n)
                    return self.base(index)

                logging.debug("chan: depth %d, recursing into %d of %d leaves", depth, len(sub), n)
                incumbent = self.solve(sub, incumbent, depth + 1)
                self.record(incumbent, index)

                if self.decide(index, incumbent.x, incumbent.lam * (1. + eps)):
                    return incumbent

            if not violated:
                return incumbent

        raise _ChanFallback("no certificate after %d passes over %d leaves" % (self.cfg.max_passes, n))


def solve_chan(points, cfg=None, consts=None):
    """Optimal star center by the randomized decision-to-optimization reduction.

    The leaves are split round-robin into three groups Q_1, Q_2, Q_3 and the
    subsets P_i = V minus Q_i are visited in random order. A subset is solved
    recursively, together with the leaves supporting the incumbent, only when
    the incumbent fails the decision procedure on it. A pass in which every
    subset accepts the incumbent certifies it for the whole set.

    Parameters
    ----------
    points : PointSet of leaves, n >= 2
    cfg : QcpConfig (optional)
    consts : EvalConstants used by the decision procedure (optional)

    Returns
    -------
    OptResult
    """

    points = _point_set(points)
    cfg = cfg or QcpConfig()

    if points.n < 2:
        raise er.InputError("the optimal center needs at least 2 leaves, got %d" % points.n)

    if points.n <= cfg.base_case_size:
        result = solve_bisection(points, cfg)
        result.method = "chan"
        return result

    solver = _ChanSolver(points.coords, cfg, consts)
    try:
        incumbent = solver.solve(np.arange(points.n))
    except _ChanFallback as e:
        logging.warning("chan reduction fell back to bisection: %s", e)
        result = solve_bisection(points, cfg)
        result.method = "chan"
        result.fallback = True
        result.decision_calls = solver.decision_calls
        return result

    report = se.evaluate_fast(points, incumbent.x, consts)
    logging.info("chan: dilation %.12g, %d subproblems, %d decision calls",
                 report.dilation, solver.subproblems, solver.decision_calls)

    return OptResult(incumbent.x, report.dilation, report.witness_a, report.witness_b, "chan",
                     solver.subproblems, seed=cfg.rng_seed, decision_calls=solver.decision_calls,
                     lower_bound=min(solver.lower, report.dilation), trace=solver.trace)
