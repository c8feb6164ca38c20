import matplotlib
matplotlib.use('agg')

import logging
import numpy as np
import matplotlib.pyplot as plt
from matplotlib.patches import Ellipse as EllipsePatch
from matplotlib.collections import LineCollection

from . import geometry as geo
from . import center_opt as co
from . import vertex_opt as vo
from . import arc_ring as ar
from . import error as er

# fixed id salt so that identical drawings produce identical files
SVG_HASH_SALT = "stardil"

LEAF_COLOR = "#1f77b4"
CENTER_COLOR = "#d62728"
ELLIPSE_COLOR = "#7f7f7f"
ENVELOPE_COLOR = "#2ca02c"


def region_outline(points, center, level, consts=None, cfg=None):
    """Selected ellipses and arc ring of the region of centers better than ``level``.

    Returns
    -------
    selection : RegionSelection
    ring : ArcRing, or None when the region is empty
    """

    points = co._point_set(points)
    opt = co.solve_chan(points, cfg, consts)
    selection = vo.select_region_ellipses(points, center, level, opt.center, consts)

    if opt.dilation >= level:
        logging.warning("region at dilation %.9g is empty (optimum %.9g), envelope omitted", level, opt.dilation)
        return selection, None

    return selection, ar.build_arc_ring(selection.ellipses, opt.center)


def plot_star(ax, points, center):
    coords = points.coords
    edges = [[center, p] for p in coords]
    ax.add_collection(LineCollection(edges, colors=LEAF_COLOR, linewidths=0.6, gid="star_edges"))
    ax.plot(coords[:, 0], coords[:, 1], "o", color=LEAF_COLOR, markersize=3, gid="leaves")
    ax.plot([center[0]], [center[1]], "*", color=CENTER_COLOR, markersize=9, gid="center")
    return len(edges), len(coords) + 1


def plot_region(ax, selection, ring):
    for e in selection.ellipses:
        ax.add_patch(EllipsePatch(e.center, 2. * e.semi_major, 2. * e.semi_minor,
                                  angle=np.degrees(e.rotation), fill=False,
                                  edgecolor=ELLIPSE_COLOR, linewidth=0.3, alpha=0.5))
    if ring is None:
        return False

    outline = ring.polyline()
    ax.plot(outline[:, 0], outline[:, 1], "-", color=ENVELOPE_COLOR, linewidth=1.2, gid="envelope")
    return True


def render_star(points, center, svg_file, region_level=None, consts=None, cfg=None):
    """Draw a star, and optionally the region of better centers, to an SVG file.

    Parameters
    ----------
    points : planar PointSet of leaves
    center : star center
    svg_file : output path
    region_level : dilation level of the region overlay (optional)

    Returns
    -------
    dict with the number of edges, markers and ellipses drawn and whether
    the envelope was drawn
    """

    points = co._point_set(points)
    if points.dim != 2:
        raise er.UnsupportedDimensionError("rendering is implemented for planar points only")
    center = geo.as_point(center, dim=2)

    matplotlib.rcParams["svg.hashsalt"] = SVG_HASH_SALT

    fig, ax = plt.subplots(figsize=(6, 6))
    ax.set_aspect("equal")
    ax.set_axis_off()

    edges, markers = plot_star(ax, points, center)

    ellipses = 0
    envelope = False
    if region_level is not None:
        selection, ring = region_outline(points, center, region_level, consts, cfg)
        envelope = plot_region(ax, selection, ring)
        ellipses = len(selection)

    ax.autoscale_view()
    fig.savefig(svg_file, format="svg", metadata={"Date": None})
    plt.close(fig)

    logging.info("rendered %s: %d edges, %d markers, %d ellipses", svg_file, edges, markers, ellipses)

    return dict(svg=svg_file, edges=edges, markers=markers, ellipses=ellipses, envelope=envelope)
