from __future__ import absolute_import
import logging
import numpy as np
from scipy.optimize import brentq
from . import error as er

# distinct intersections closer than this are collapsed
EPS_ROOT = 1e-7

# residual accepted for a polished intersection of normalized conics
RESIDUAL_TOL = 1e-9

# a double root of the resultant is only resolved to about sqrt(machine epsilon);
# candidates this close where the curves are parallel are one tangency
TANGENT_RADIUS = 1e-5
TANGENT_SINE = 1e-3

# generic frame rotation so that no two crossings share an abscissa in practice
_FRAME_ANGLE = 0.4137


class Conic(object):
    """Ax^2 + Bxy + Cy^2 + Dx + Ey + F = 0, negative inside for ellipses."""

    __slots__ = ("coeffs",)

    def __init__(self, A, B, C, D, E, F):
        coeffs = np.array([A, B, C, D, E, F], dtype=float)
        if not np.all(np.isfinite(coeffs)):
            raise er.InputError("conic coefficients must be finite: %s" % coeffs)
        if not np.any(coeffs[:3]):
            raise er.InputError("conic has no quadratic part")
        coeffs.flags.writeable = False
        self.coeffs = coeffs

    def __repr__(self):
        return "Conic(%s)" % ", ".join("%.6g" % c for c in self.coeffs)

    def __call__(self, x, y):
        A, B, C, D, E, F = self.coeffs
        return A * x * x + B * x * y + C * y * y + D * x + E * y + F

    def gradient(self, x, y):
        A, B, C, D, E, F = self.coeffs
        return np.array([2. * A * x + B * y + D, B * x + 2. * C * y + E])

    def matrix(self):
        A, B, C, D, E, F = self.coeffs
        return np.array([[A, B / 2., D / 2.],
                         [B / 2., C, E / 2.],
                         [D / 2., E / 2., F]])

    @classmethod
    def from_matrix(cls, m):
        return cls(m[0, 0], 2. * m[0, 1], m[1, 1], 2. * m[0, 2], 2. * m[1, 2], m[2, 2])

    def normalized(self):
        """Same zero set and sign, largest coefficient magnitude 1."""
        return Conic(*(self.coeffs / np.max(np.abs(self.coeffs))))

    def rotated(self, angle):
        """Conic expressed in a frame rotated by angle about the origin."""
        c, s = np.cos(angle), np.sin(angle)
        t = np.array([[c, -s, 0.], [s, c, 0.], [0., 0., 1.]])
        return Conic.from_matrix(t.T.dot(self.matrix()).dot(t))


def ellipse_to_conic(e):
    """Implicit quadratic of a planar ellipse boundary, negative inside.

    Parameters
    ----------
    e : Ellipse in R^2 with positive semi-minor axis

    Returns
    -------
    Conic
    """

    if e.dim != 2:
        raise er.UnsupportedDimensionError("conic form needs a planar ellipse, got d=%d" % e.dim)

    a = e.semi_major
    b = e.semi_minor
    if not b > 0:
        raise er.InputError("ellipse at dilation level 1 is a segment and has no conic form")

    phi = e.rotation
    c, s = np.cos(phi), np.sin(phi)
    rot = np.array([[c, -s], [s, c]])
    m = rot.dot(np.diag([1. / (a * a), 1. / (b * b)])).dot(rot.T)
    mx, my = e.center

    A = m[0, 0]
    B = 2. * m[0, 1]
    C = m[1, 1]
    D = -2. * (m[0, 0] * mx + m[0, 1] * my)
    E = -2. * (m[0, 1] * mx + m[1, 1] * my)
    F = m[0, 0] * mx * mx + 2. * m[0, 1] * mx * my + m[1, 1] * my * my - 1.

    return Conic(A, B, C, D, E, F).normalized()


def solve_quartic_real(coeffs, tol=1e-6):
    """Real roots of a polynomial of degree at most 4.

    Candidates come from the companion matrix eigenvalues, are polished by
    Newton steps and, where the polynomial brackets a sign change around a
    candidate, by bisection.

    Parameters
    ----------
    coeffs : polynomial coefficients, highest degree first
    tol : admissible imaginary part relative to the root magnitude

    Returns
    -------
    roots : sorted numpy array of distinct real roots
    """

    coeffs = np.trim_zeros(np.asarray(coeffs, dtype=float), "f")
    if coeffs.size == 0:
        raise er.InputError("zero polynomial has no isolated roots")

    scale = np.max(np.abs(coeffs))
    coeffs = coeffs / scale
    # a vanishing leading term means a root escaped to infinity
    while coeffs.size > 1 and abs(coeffs[0]) < 1e-14:
        coeffs = coeffs[1:]

    if coeffs.size == 1:
        return np.array([])

    deriv = np.polyder(coeffs)
    roots = []
    for z in np.roots(coeffs):
        if abs(z.imag) > tol * (1. + abs(z.real)):
            continue
        x = z.real
        for _ in range(8):
            dp = np.polyval(deriv, x)
            if dp == 0:
                break
            step = np.polyval(coeffs, x) / dp
            x -= step
            if abs(step) <= 1e-15 * (1. + abs(x)):
                break

        width = 1e-6 * (1. + abs(x))
        lo, hi = x - width, x + width
        if np.polyval(coeffs, lo) * np.polyval(coeffs, hi) < 0:
            x = brentq(lambda t: np.polyval(coeffs, t), lo, hi, xtol=1e-15)

        roots.append(x)

    roots = np.sort(np.array(roots))
    if roots.size > 1:
        keep = np.concatenate([[True], np.diff(roots) > EPS_ROOT * (1. + np.abs(roots[1:]))])
        roots = roots[keep]

    return roots


class ConicIntersection(object):
    """Intersection points of two conic boundaries."""

    def __init__(self, points, degenerate=False):
        self.points = np.asarray(points, dtype=float).reshape(-1, 2)
        self.degenerate = degenerate

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __getitem__(self, index):
        return self.points[index]


def _resultant_in_y(c1, c2):
    """Quartic in x whose roots are abscissas of common points."""

    A1, B1, C1, D1, E1, F1 = c1.coeffs
    A2, B2, C2, D2, E2, F2 = c2.coeffs

    # each conic as a1 y^2 + b(x) y + c(x), polynomials in x highest degree first
    a1, a2 = C1, C2
    b1, b2 = np.array([B1, E1]), np.array([B2, E2])
    q1, q2 = np.array([A1, D1, F1]), np.array([A2, D2, F2])

    u = np.polysub(a1 * q2, a2 * q1)
    v = np.polysub(a1 * b2, a2 * b1)
    w = np.polysub(np.polymul(b1, q2), np.polymul(b2, q1))

    return np.polysub(np.polymul(u, u), np.polymul(v, w))


def _polish(c1, c2, x, y, iterations=20):
    p = np.array([x, y], dtype=float)
    for _ in range(iterations):
        f = np.array([c1(*p), c2(*p)])
        if np.max(np.abs(f)) <= 1e-15:
            break
        jac = np.vstack([c1.gradient(*p), c2.gradient(*p)])
        step = np.linalg.lstsq(jac, f, rcond=None)[0]
        p = p - step
        if np.max(np.abs(step)) <= 1e-16 * (1. + np.max(np.abs(p))):
            break
    return p


def _collapse(points, eps):
    kept = []
    for p in points:
        if all(np.max(np.abs(p - q)) > eps * (1. + np.max(np.abs(q))) for q in kept):
            kept.append(p)
    return kept


def _is_tangent(c1, c2, p):
    g1 = c1.gradient(*p)
    g2 = c2.gradient(*p)
    scale = np.sqrt(np.dot(g1, g1) * np.dot(g2, g2))
    if scale == 0:
        return True
    return abs(g1[0] * g2[1] - g1[1] * g2[0]) <= TANGENT_SINE * scale


def _merge_tangencies(points, c1, c2):
    """Mean of each cluster of candidates around a point where the curves touch."""

    clusters = []
    for p in points:
        for cluster in clusters:
            q = np.mean(cluster, axis=0)
            near = np.max(np.abs(p - q)) <= TANGENT_RADIUS * (1. + np.max(np.abs(q)))
            if near and _is_tangent(c1, c2, (p + q) / 2.):
                cluster.append(p)
                break
        else:
            clusters.append([p])
    return [np.mean(cluster, axis=0) for cluster in clusters]


def conic_intersections(c1, c2, eps_root=EPS_ROOT):
    """Real intersection points of two conic boundaries.

    The two conics are rotated into a generic frame, y is eliminated with the
    resultant of the two quadratics, and each real root of the resulting
    quartic is lifted to candidate points that are polished by Newton steps
    on both equations.

    Parameters
    ----------
    c1, c2 : Conic
    eps_root : distance below which intersections are merged

    Returns
    -------
    ConicIntersection with at most 4 distinct points, a tangency counted once;
    ``degenerate`` is set when the conics are numerically identical
    """

    n1 = c1.normalized()
    n2 = c2.normalized()

    sign = 1. if np.dot(n1.coeffs, n2.coeffs) >= 0 else -1.
    if np.max(np.abs(n1.coeffs - sign * n2.coeffs)) < 1e-12:
        logging.debug("conic intersection of near-identical conics flagged degenerate")
        return ConicIntersection([], degenerate=True)

    r1 = n1.rotated(_FRAME_ANGLE).normalized()
    r2 = n2.rotated(_FRAME_ANGLE).normalized()

    res = _resultant_in_y(r1, r2)
    if np.max(np.abs(res)) < 1e-14:
        logging.debug("conic resultant vanished, flagging degenerate intersection")
        return ConicIntersection([], degenerate=True)

    candidates = []
    for x in solve_quartic_real(res, tol=1e-4):
        A, B, C, D, E, F = r1.coeffs
        qa, qb, qc = C, B * x + E, A * x * x + D * x + F
        if abs(qa) > 0:
            disc = max(qb * qb - 4. * qa * qc, 0.)
            ys = [(-qb + np.sqrt(disc)) / (2. * qa), (-qb - np.sqrt(disc)) / (2. * qa)]
        else:
            ys = [-qc / qb] if qb != 0 else []
        for y in ys:
            p = _polish(r1, r2, x, y)
            if abs(r1(*p)) <= RESIDUAL_TOL and abs(r2(*p)) <= RESIDUAL_TOL:
                candidates.append(p)

    points = _merge_tangencies(_collapse(candidates, eps_root), r1, r2)
    if len(points) > 4:
        logging.debug("conic intersection produced %d points, keeping 4 best", len(points))
        points = sorted(points, key=lambda p: abs(r1(*p)) + abs(r2(*p)))[:4]

    c, s = np.cos(_FRAME_ANGLE), np.sin(_FRAME_ANGLE)
    rot = np.array([[c, -s], [s, c]])
    points = [rot.dot(p) for p in points]

    return ConicIntersection(points)
