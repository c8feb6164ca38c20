from __future__ import absolute_import
import os
import logging
import numpy as np
from . import geometry as geo
from . import error as er

SEED_ENV_VAR = "DILATION_SEED"

KINDS = ("uniform", "clustered", "collinear", "annular")

# half width of the uniform jitter added to collinear instances
COLLINEAR_JITTER = 2.5e-4

# ratio of consecutive shell radii in annular instances
ANNULAR_RATIO = 2.

CLUSTER_SPREAD = 0.02


def resolve_seed(seed=None):
    """Explicit seed, else the DILATION_SEED environment variable, else 0."""

    if seed is not None:
        return int(seed)

    value = os.environ.get(SEED_ENV_VAR)
    if value is None or not value.strip():
        return 0

    try:
        return int(value)
    except ValueError:
        raise er.UsageError("%s must be an integer, got %r" % (SEED_ENV_VAR, value))


def _unit_vectors(rng, n, d):
    v = rng.normal(size=(n, d))
    norms = np.sqrt(np.sum(v * v, axis=1))
    norms[norms == 0] = 1.
    return v / norms[:, np.newaxis]


def _uniform(rng, n, d):
    return rng.uniform(size=(n, d))


def _clustered(rng, n, d):
    blobs = int(np.ceil(np.sqrt(n)))
    centers = rng.uniform(size=(blobs, d))
    return centers[np.arange(n) % blobs] + rng.normal(scale=CLUSTER_SPREAD, size=(n, d))


def _collinear(rng, n, d):
    direction = _unit_vectors(rng, 1, d)[0]
    origin = rng.uniform(size=d)
    t = np.sort(rng.uniform(size=n))
    jitter = rng.uniform(-COLLINEAR_JITTER, COLLINEAR_JITTER, size=(n, d))
    return origin + t[:, np.newaxis] * direction + jitter


def _annular(rng, n, d):
    shells = max(1, int(np.ceil(np.log2(n))))
    radius = ANNULAR_RATIO ** (np.arange(n) % shells)
    return radius[:, np.newaxis] * _unit_vectors(rng, n, d)


_GENERATORS = dict(uniform=_uniform, clustered=_clustered, collinear=_collinear, annular=_annular)


def generate(kind, n, d, seed):
    """Random point set of a given kind.

    Parameters
    ----------
    kind : "uniform" (unit cube), "clustered" (ceil(sqrt(n)) Gaussian blobs),
        "collinear" (jittered segment) or "annular" (shells with radii 2^k)
    n : number of points, at least 1
    d : dimension, at least 2
    seed : integer seed

    Returns
    -------
    PointSet
    """

    if kind not in _GENERATORS:
        raise er.InputError("unknown instance kind %r, expected one of %s" % (kind, KINDS))

    if n < 1:
        raise er.InputError("an instance needs at least one point, got %d" % n)

    if d < 2:
        raise er.InputError("dimension must be at least 2, got %d" % d)

    rng = np.random.RandomState(seed)
    coords = _GENERATORS[kind](rng, n, d)

    logging.debug("generated %s instance: n=%d, d=%d, seed=%d", kind, n, d, seed)
    return geo.PointSet(coords)
