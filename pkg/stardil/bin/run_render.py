#!/usr/bin/python
import stardil.star_eval as se
import stardil.point_io as pio
import stardil.plot_star as ps
import stardil.logging_utils as lu
from stardil._schemas import RenderParameters
from stardil.bin.cli import run_main


def run_render(input_file, center, svg, region=None, profile="fast"):
    """Draw the star of a point file about a center, with an optional region overlay."""

    lu.log_pretty_header("Render star", level=2)

    points = pio.read_points(input_file)
    c = pio.parse_center(center, points.dim)
    consts = se.EvalConstants.from_profile(profile, points.dim)

    return ps.render_star(points, c, svg, region_level=region, consts=consts)


def from_args(module_args):
    return run_render(module_args["input_file"],
                      module_args["center"],
                      module_args["svg"],
                      module_args.get("region"),
                      module_args["profile"])


def main(args=None):
    """
    Usage:
    python run_render.py --input_file POINTS --center "x,y" --svg OUT.svg [--region LEVEL]
    """
    run_main(RenderParameters, from_args, args)


if __name__ == "__main__": main()
