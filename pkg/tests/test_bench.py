import pytest
import numpy as np

import stardil.bench as bench
import stardil.error as er


def test_loglog_slope():
    sizes = np.array([10., 100., 1000.])
    assert np.isclose(bench.loglog_slope(sizes, 3. * sizes ** 2), 2.)
    assert np.isclose(bench.loglog_slope(sizes, sizes * np.log(sizes)), 1.1505, atol=1e-3)
    assert bench.loglog_slope([10.], [1.]) is None


def test_eval_suite():
    output = bench.run_bench("eval", [64, 128], 2)
    assert output["suite"] == "eval"
    assert [row["n"] for row in output["table"]] == [64, 128]
    assert all(row["time_s"] > 0 for row in output["table"])
    assert "seed" not in output["table"][0]
    assert output["slope"] is not None


def test_center_suite():
    output = bench.run_bench("center", [12, 24], 1)
    assert output["fallbacks"] == 0
    assert output["decision_call_slope"] is not None
    assert "decision_calls" in output["table"][0]


def test_vertex_suite_is_planar():
    output = bench.run_bench("vertex", [16], 1, dim=3)
    assert output["dim"] == 2
    row = output["table"][0]
    assert row["mean_iterations"] >= 1
    assert np.isclose(row["log2_n"], 4.)
    assert output["slope"] is None


def test_bench_errors():
    with pytest.raises(er.InputError):
        bench.run_bench("sort", [10], 1)
    with pytest.raises(er.InputError):
        bench.run_bench("eval", [], 1)
    with pytest.raises(er.InputError):
        bench.run_bench("eval", [10], 0)


@pytest.mark.slow
def test_fast_eval_scales_near_linearly():
    output = bench.run_bench("eval", [2 ** k for k in range(10, 18)], 3)
    assert 0.7 <= output["slope"] <= 1.3


@pytest.mark.slow
def test_brute_eval_scales_quadratically():
    output = bench.run_bench("eval_brute", [2 ** k for k in range(9, 13)], 3)
    assert 1.6 <= output["slope"] <= 2.4
