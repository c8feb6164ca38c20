import pytest

import stardil.error as er


@pytest.mark.parametrize("error_type, kind", [
    (er.InputError, "input_error"),
    (er.UndefinedDilationError, "undefined_dilation"),
    (er.EmptyLevelSetError, "empty_level_set"),
    (er.UnsupportedDimensionError, "unsupported_dimension"),
    (er.InteriorityError, "interiority"),
    (er.ConstantsError, "constants_undefined"),
    (er.UsageError, "usage_error"),
])
def test_error_kinds(error_type, kind):
    error = error_type("something went wrong")
    assert isinstance(error, er.DilationError)
    assert er.error_object(error) == {"error": kind, "message": "something went wrong"}


def test_solver_error_diagnostics():
    error = er.SolverError("no convergence", diagnostics=dict(rounds=3, best_h=0.5))
    assert er.error_object(error) == {"error": "solver_error",
                                      "message": "no convergence",
                                      "diagnostics": {"rounds": 3, "best_h": 0.5}}


def test_foreign_exception():
    assert er.error_object(ValueError("bad"))["error"] == "ValueError"
