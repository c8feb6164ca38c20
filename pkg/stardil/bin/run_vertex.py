#!/usr/bin/python
import logging
import stardil.star_eval as se
import stardil.center_opt as co
import stardil.vertex_opt as vo
import stardil.point_io as pio
import stardil.instances as inst
import stardil.logging_utils as lu
from stardil._schemas import VertexParameters
from stardil.bin.cli import Timer, run_main


def run_vertex(input_file, method="fast", seed=None, profile="fast", record_time=True):
    """Best star center among the points of a point file.

    Parameters
    ----------
    input_file : str
        point file
    method : str
        "fast" (planar pruning loop) or "brute" (every point, any dimension)
    seed : int
        pivot seed, DILATION_SEED when None

    Returns
    -------
    dict
        center index, center, dilation, iterations, seed
    """

    lu.log_pretty_header("Best star center among the points", level=1)

    points = pio.read_points(input_file)
    seed = inst.resolve_seed(seed)

    with Timer() as timer:
        if method == "brute":
            result = vo.solve_constrained_brute(points)
            result.seed = seed
        else:
            consts = se.EvalConstants.from_profile(profile, points.dim)
            result = vo.solve_constrained(points, co.QcpConfig(rng_seed=seed), consts, rng_seed=seed)

    output = result.as_dict()
    output.update(n=points.n, profile=profile)
    if record_time:
        output["time_ns"] = timer.elapsed_ns

    logging.info("center index %d, dilation %.12g", result.center_index, result.dilation)
    return output


def from_args(module_args):
    return run_vertex(module_args["input_file"],
                      module_args["method"],
                      module_args.get("seed"),
                      module_args["profile"],
                      module_args["record_time"])


def main(args=None):
    """
    Usage:
    python run_vertex.py --input_file POINTS [--method fast|brute] [--seed SEED]
    """
    run_main(VertexParameters, from_args, args)


if __name__ == "__main__": main()
