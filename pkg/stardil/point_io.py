from __future__ import absolute_import
import re
import logging
import numpy as np
from . import geometry as geo
from . import error as er

_SEPARATORS = re.compile(r"[,\s]+")

# significant digits written per coordinate
COORDINATE_DIGITS = 12


def _tokens(line):
    return [t for t in _SEPARATORS.split(line.strip()) if t]


def _parse_values(tokens, line_number):
    try:
        values = [float(t) for t in tokens]
    except ValueError:
        raise er.ParseError("non-numeric value in %r" % " ".join(tokens), line_number)

    if not np.all(np.isfinite(values)):
        raise er.ParseError("non-finite value in %r" % " ".join(tokens), line_number)

    return values


def parse_points(text):
    """Point set from text with one point per line.

    Coordinates are separated by whitespace or commas; lines starting with
    '#' and blank lines are skipped. The dimension is taken from the first
    point.

    Parameters
    ----------
    text : str

    Returns
    -------
    PointSet
    """

    rows = []
    seen = {}
    dim = None

    for line_number, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue

        values = _parse_values(_tokens(stripped), line_number)

        if dim is None:
            dim = len(values)
            if dim < 2:
                raise er.ParseError("points need at least 2 coordinates, got %d" % dim, line_number)
        elif len(values) != dim:
            raise er.ParseError("expected %d coordinates, got %d" % (dim, len(values)), line_number)

        key = tuple(values)
        if key in seen:
            raise er.ParseError("duplicate of the point on line %d" % seen[key], line_number)
        seen[key] = line_number

        rows.append(values)

    if not rows:
        raise er.ParseError("no points found")

    logging.debug("parsed %d points in %d dimensions", len(rows), dim)
    return geo.PointSet(np.array(rows), dim=dim)


def _decode(data):
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as e:
        line_number = data.count(b"\n", 0, e.start) + 1
        raise er.ParseError("byte %r is not valid UTF-8" % data[e.start:e.start + 1], line_number)


def read_points(file_name):
    try:
        with open(file_name, "rb") as f:
            data = f.read()
    except OSError as e:
        raise er.InputError("cannot read %s: %s" % (file_name, e.strerror or e))
    return parse_points(_decode(data))


def format_points(points, header=None):
    """Point file text; coordinates keep 12 significant digits."""

    coords = points.coords if isinstance(points, geo.PointSet) else np.atleast_2d(points)
    lines = []
    if header:
        lines.extend("# " + h for h in header.splitlines())
    fmt = "%%.%dg" % COORDINATE_DIGITS
    lines.extend(" ".join(fmt % v for v in row) for row in coords)
    return "\n".join(lines) + "\n"


def write_points(file_name, points, header=None):
    try:
        with open(file_name, "w") as f:
            f.write(format_points(points, header))
    except OSError as e:
        raise er.InputError("cannot write %s: %s" % (file_name, e.strerror or e))


def parse_center(text, dim):
    """Center given on the command line as "x,y[,z]"."""

    if text is None or not str(text).strip():
        raise er.UsageError("a center is required")

    try:
        values = [float(t) for t in _tokens(str(text))]
        return geo.as_point(values, dim=dim)
    except (ValueError, er.InputError) as e:
        raise er.UsageError("ill-formed center %r: %s" % (text, e))
