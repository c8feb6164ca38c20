#!/usr/bin/python
import stardil.instances as inst
import stardil.point_io as pio
import stardil.logging_utils as lu
from stardil._schemas import GenParameters
from stardil.bin.cli import run_main


def run_gen(kind, n, d, seed, output_file):
    """Write a random instance to a point file."""

    lu.log_pretty_header("Generate instance", level=2)

    seed = inst.resolve_seed(seed)
    points = inst.generate(kind, n, d, seed)
    pio.write_points(output_file, points, header="%s instance n=%d d=%d seed=%d" % (kind, n, d, seed))

    return dict(kind=kind, n=n, d=d, seed=seed, output_file=output_file)


def from_args(module_args):
    return run_gen(module_args["kind"],
                   module_args["n"],
                   module_args["d"],
                   module_args.get("seed"),
                   module_args["output_file"])


def main(args=None):
    """
    Usage:
    python run_gen.py --kind uniform --n 100 --d 2 --output_file POINTS [--seed SEED]
    """
    run_main(GenParameters, from_args, args)


if __name__ == "__main__": main()
