import pytest
import numpy as np

import stardil.geometry as geo
import stardil.instances as inst


SQUARE = [[0., 0.], [1., 0.], [1., 1.], [0., 1.]]

CENTERED_SQUARE = [[-1., -1.], [1., -1.], [1., 1.], [-1., 1.]]

TRIANGLE = [[0., 0.], [1., 0.], [0.5, np.sqrt(3.) / 2.]]

COLLINEAR_TRIPLE = [[0., 0.], [1., 0.], [2., 0.]]


@pytest.fixture()
def square():
    return geo.PointSet(SQUARE)


@pytest.fixture()
def centered_square():
    return geo.PointSet(CENTERED_SQUARE)


@pytest.fixture()
def triangle():
    return geo.PointSet(TRIANGLE)


@pytest.fixture()
def collinear_triple():
    return geo.PointSet(COLLINEAR_TRIPLE)


@pytest.fixture()
def random_instances():
    """Seeded random instances of every kind, small enough for brute force."""

    def make(count, sizes=(4, 9, 17, 40, 96), dims=(2, 3), kinds=inst.KINDS, seed0=0):
        rng = np.random.RandomState(seed0)
        cases = []
        for seed in range(seed0, seed0 + count):
            kind = kinds[seed % len(kinds)]
            n = int(sizes[rng.randint(len(sizes))])
            d = int(dims[rng.randint(len(dims))])
            cases.append((kind, n, d, seed, inst.generate(kind, n, d, seed)))
        return cases

    return make


@pytest.fixture()
def point_file(tmpdir):
    """Write a point set to a file and return its path."""

    def write(points, name="points.txt"):
        path = str(tmpdir.join(name))
        with open(path, "w") as f:
            for p in np.atleast_2d(points):
                f.write(" ".join(repr(float(v)) for v in p) + "\n")
        return path

    return write
