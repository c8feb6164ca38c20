import sys
import logging
import simplejson as json
import allensdk.core.json_utilities as ju


def dumps(obj):
    """Canonical text of a payload: sorted keys, fixed indentation, numpy values converted."""
    return json.dumps(obj, sort_keys=True, indent=2, default=ju.json_handler, ignore_nan=True)


def write(file_name, obj):
    logging.debug("writing %s", file_name)
    with open(file_name, "w") as f:
        f.write(dumps(obj))
        f.write("\n")


def emit(obj, file_name=None):
    """Write a payload to a file, or to standard output when no file is given."""

    if file_name:
        write(file_name, obj)
    else:
        sys.stdout.write(dumps(obj))
        sys.stdout.write("\n")
        sys.stdout.flush()
