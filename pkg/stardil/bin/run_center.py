#!/usr/bin/python
import logging
import stardil.star_eval as se
import stardil.center_opt as co
import stardil.point_io as pio
import stardil.instances as inst
import stardil.error as er
import stardil.logging_utils as lu
from stardil._schemas import CenterParameters
from stardil.bin.cli import Timer, run_main


def run_center(input_file, method="chan", eps=None, seed=None, profile="fast", record_time=True):
    """Optimal center of the star with the leaves of a point file.

    Parameters
    ----------
    input_file : str
        point file
    method : str
        "chan" (randomized reduction) or "bisect" (bisection over all pairs)
    eps : float
        relative tolerance on the optimal dilation
    seed : int
        random seed, DILATION_SEED when None

    Returns
    -------
    dict
        center, dilation, witness pair, method, iterations, seed
    """

    lu.log_pretty_header("Optimal star center", level=1)

    points = pio.read_points(input_file)
    if points.n < 2:
        raise er.UsageError("an optimal center needs at least 2 points, got %d" % points.n)

    seed = inst.resolve_seed(seed)
    cfg = co.QcpConfig(eps_opt=eps, rng_seed=seed)
    consts = se.EvalConstants.from_profile(profile, points.dim)

    with Timer() as timer:
        if method == "bisect":
            result = co.solve_bisection(points, cfg)
        else:
            result = co.solve_chan(points, cfg, consts)

    output = result.as_dict()
    output.update(n=points.n, profile=profile)
    if record_time:
        output["time_ns"] = timer.elapsed_ns

    logging.info("center %s, dilation %.12g", output["center"], result.dilation)
    return output


def from_args(module_args):
    return run_center(module_args["input_file"],
                      module_args["method"],
                      module_args.get("eps"),
                      module_args.get("seed"),
                      module_args["profile"],
                      module_args["record_time"])


def main(args=None):
    """
    Usage:
    python run_center.py --input_file POINTS [--method chan|bisect] [--eps EPS] [--seed SEED]
    """
    run_main(CenterParameters, from_args, args)


if __name__ == "__main__": main()
