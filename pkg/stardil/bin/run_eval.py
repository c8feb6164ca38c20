#!/usr/bin/python
import logging
import stardil.star_eval as se
import stardil.point_io as pio
import stardil.logging_utils as lu
from stardil._schemas import EvalParameters
from stardil.bin.cli import Timer, run_main


def run_eval(input_file, center, method="fast", profile="fast", record_time=True):
    """Dilation of the star with the leaves of a point file and a given center.

    Parameters
    ----------
    input_file : str
        point file
    center : str
        center as "x,y[,z]"
    method : str
        "fast" (candidate pairs) or "brute" (all pairs)
    profile : str
        candidate pair constants profile

    Returns
    -------
    dict
        dilation, witness pair, n, method
    """

    lu.log_pretty_header("Evaluate star dilation", level=1)

    points = pio.read_points(input_file)
    c = pio.parse_center(center, points.dim)

    with Timer() as timer:
        if method == "brute":
            report = se.evaluate_brute(points, c)
        else:
            report = se.evaluate_fast(points, c, se.EvalConstants.from_profile(profile, points.dim))

    logging.info("dilation %.12g, witness %s", report.dilation, report.witness)

    output = dict(dilation=report.dilation,
                  witness=[report.witness_a, report.witness_b],
                  n=points.n,
                  method=method,
                  profile=profile)
    if record_time:
        output["time_ns"] = timer.elapsed_ns

    return output


def from_args(module_args):
    return run_eval(module_args["input_file"],
                    module_args["center"],
                    module_args["method"],
                    module_args["profile"],
                    module_args["record_time"])


def main(args=None):
    """
    Usage:
    python run_eval.py --input_file POINTS --center "x,y" [--method fast|brute] [--output_json OUTPUT_JSON]
    """
    run_main(EvalParameters, from_args, args)


if __name__ == "__main__": main()
