#!/usr/bin/python
import sys
import stardil.bin.run_eval as run_eval
import stardil.bin.run_center as run_center
import stardil.bin.run_vertex as run_vertex
import stardil.bin.run_gen as run_gen
import stardil.bin.run_render as run_render
import stardil.bin.run_bench as run_bench
import stardil.error as er
import stardil.json_utilities as ju
from stardil._schemas import (EvalParameters, CenterParameters, VertexParameters,
                              GenParameters, RenderParameters, BenchParameters)
from stardil.bin.cli import execute

COMMANDS = {
    "eval": (EvalParameters, run_eval.from_args),
    "center": (CenterParameters, run_center.from_args),
    "vertex": (VertexParameters, run_vertex.from_args),
    "gen": (GenParameters, run_gen.from_args),
    "render": (RenderParameters, run_render.from_args),
    "bench": (BenchParameters, run_bench.from_args),
}


def dispatch(argv):
    """Run the subcommand named by the first argument; returns the exit status."""

    if not argv or argv[0] not in COMMANDS:
        ju.emit(er.error_object(er.UsageError("expected one of the subcommands: %s"
                                              % ", ".join(sorted(COMMANDS)))))
        return 2

    schema_type, runner = COMMANDS[argv[0]]
    return execute(schema_type, runner, argv[1:])


def main():
    """
    Usage:
    stardil {eval,center,vertex,gen,render,bench} [--flags]
    """
    sys.exit(dispatch(sys.argv[1:]))


if __name__ == "__main__": main()
