import os
import sys
import logging


def configure_logger(log_level="INFO", log_dir=None):
    """Send log records to standard error and, optionally, to a run log file.

    Standard output is reserved for the JSON payload of a command.

    Parameters
    ----------
    log_level: str
        name of the root logging level
    log_dir: str (optional)
        directory receiving log.txt
    """

    root = logging.getLogger()
    root.setLevel(getattr(logging, str(log_level).upper(), logging.INFO))

    for handler in list(root.handlers):
        if getattr(handler, "_stardil", False):
            root.removeHandler(handler)
            handler.close()

    handlers = [logging.StreamHandler(sys.stderr)]
    if log_dir:
        handlers.append(logging.FileHandler(os.path.join(log_dir, "log.txt")))

    for handler in handlers:
        handler.setFormatter(logging.Formatter(logging.BASIC_FORMAT))
        handler._stardil = True
        root.addHandler(handler)


def log_pretty_header(header, level=1):
    """Command banner: the title underlined with '=' (level 1) or '-' (level 2)."""

    rule = "=" if level == 1 else "-"
    logging.info(header)
    logging.info(rule * len(header))
