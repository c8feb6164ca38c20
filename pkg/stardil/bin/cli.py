import sys
import time
import logging
import argschema as ags
import marshmallow as mm
import stardil.error as er
import stardil.json_utilities as ju
import stardil.logging_utils as lu


class Timer(object):
    """Wall time of a command phase in nanoseconds."""

    def __enter__(self):
        self.start = time.perf_counter_ns()
        return self

    def __exit__(self, *exc):
        self.elapsed_ns = time.perf_counter_ns() - self.start
        return False


def execute(schema_type, runner, args=None):
    """Parse arguments, run a command and emit its JSON payload.

    Library errors and invalid arguments are reported as an error object on
    standard output with a nonzero exit status.

    Returns
    -------
    exit status
    """

    output_json = None
    try:
        module = ags.ArgSchemaParser(schema_type=schema_type, args=args)
        lu.configure_logger(module.args.get("log_level", "INFO"), module.args.get("log_dir"))
        output_json = module.args.get("output_json")
        output = runner(module.args)
        ju.emit(output, output_json)
    except mm.ValidationError as e:
        error = er.UsageError("invalid arguments: %s" % e)
        logging.error(str(error))
        ju.emit(er.error_object(error))
        return 2
    except er.DilationError as e:
        logging.error(str(e))
        ju.emit(er.error_object(e), output_json)
        return 1
    except (OSError, UnicodeError) as e:
        # the output file itself may be what failed, so report on stdout
        error = er.InputError(str(e))
        logging.error(str(error))
        ju.emit(er.error_object(error))
        return 1

    return 0


def run_main(schema_type, runner, args=None):
    sys.exit(execute(schema_type, runner, args))
