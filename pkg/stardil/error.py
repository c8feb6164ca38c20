class DilationError(Exception):
    """Generic Python-exception-derived object raised by star dilation routines."""
    kind = "dilation_error"


class InputError(DilationError):
    """Malformed geometric input: bad dimension, non-finite or coincident points."""
    kind = "input_error"


class UndefinedDilationError(InputError):
    """Dilation of a pair is undefined because the pair coincides."""
    kind = "undefined_dilation"


class EmptyLevelSetError(InputError):
    """A dilation level below 1 has an empty level set."""
    kind = "empty_level_set"


class UnsupportedDimensionError(InputError):
    kind = "unsupported_dimension"


class InteriorityError(DilationError):
    """A radial query was issued from a point that is not strictly inside the region."""
    kind = "interiority"


class ConstantsError(DilationError):
    """Candidate-pair constants cannot be derived for the requested threshold."""
    kind = "constants_undefined"


class SolverError(DilationError):
    """The convex feasibility sub-solver did not converge."""
    kind = "solver_error"

    def __init__(self, message, diagnostics=None):
        super(SolverError, self).__init__(message)
        self.diagnostics = diagnostics or {}


class ParseError(InputError):
    kind = "parse_error"

    def __init__(self, message, line_number=None):
        if line_number is not None:
            message = "line %d: %s" % (line_number, message)
        super(ParseError, self).__init__(message)
        self.line_number = line_number


class UsageError(DilationError):
    kind = "usage_error"


def error_object(exc):
    """Machine-parsable description of an exception for command line output."""
    payload = {"error": getattr(exc, "kind", type(exc).__name__),
               "message": str(exc)}
    line_number = getattr(exc, "line_number", None)
    if line_number is not None:
        payload["line"] = line_number
    diagnostics = getattr(exc, "diagnostics", None)
    if diagnostics:
        payload["diagnostics"] = diagnostics
    return payload
