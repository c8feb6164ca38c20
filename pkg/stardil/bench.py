from __future__ import absolute_import
import time
import logging
import numpy as np
import pandas as pd
from scipy.stats import linregress
from . import star_eval as se
from . import center_opt as co
from . import vertex_opt as vo
from . import instances
from . import error as er

SUITES = ("eval", "eval_brute", "center", "vertex")


def _timed(func, *args, **kwargs):
    start = time.perf_counter()
    result = func(*args, **kwargs)
    return result, time.perf_counter() - start


def _run_one(suite, points, seed, consts):
    if suite == "eval":
        center = points.centroid()
        report, elapsed = _timed(se.evaluate_fast, points, center, consts)
        return dict(time_s=elapsed, dilation=report.dilation)

    if suite == "eval_brute":
        center = points.centroid()
        report, elapsed = _timed(se.evaluate_brute, points, center)
        return dict(time_s=elapsed, dilation=report.dilation)

    if suite == "center":
        result, elapsed = _timed(co.solve_chan, points, co.QcpConfig(rng_seed=seed), consts)
        return dict(time_s=elapsed, dilation=result.dilation, decision_calls=result.decision_calls,
                    fallback=result.fallback)

    result, elapsed = _timed(vo.solve_constrained, points, co.QcpConfig(rng_seed=seed), consts)
    return dict(time_s=elapsed, dilation=result.dilation, iterations=result.loop_iterations,
                fallback=result.fallback)


def loglog_slope(sizes, values):
    """Slope of log(values) against log(sizes)."""

    sizes = np.asarray(sizes, dtype=float)
    values = np.asarray(values, dtype=float)
    if len(sizes) < 2:
        return None
    return float(linregress(np.log(sizes), np.log(values)).slope)


def run_bench(suite, sizes, seeds, kind="uniform", dim=2, profile="fast"):
    """Median wall time per size for one suite, with the fitted log-log slope.

    Parameters
    ----------
    suite : "eval", "eval_brute", "center" or "vertex"
    sizes : instance sizes
    seeds : number of seeded instances per size
    kind : instance kind passed to the generator

    Returns
    -------
    dict with a per-size table and the slope of median time (and of median
    decision calls for the center suite)
    """

    if suite not in SUITES:
        raise er.InputError("unknown bench suite %r, expected one of %s" % (suite, SUITES))

    if seeds < 1 or not sizes:
        raise er.InputError("bench needs at least one size and one seed")

    if suite == "vertex":
        dim = 2

    consts = se.EvalConstants.from_profile(profile, dim)

    records = []
    for n in sizes:
        for seed in range(seeds):
            points = instances.generate(kind, n, dim, seed)
            record = _run_one(suite, points, seed, consts)
            record.update(n=n, seed=seed)
            records.append(record)
        logging.info("bench %s: n=%d done", suite, n)

    runs = pd.DataFrame.from_records(records)
    table = runs.drop(columns=["seed", "fallback"], errors="ignore").groupby("n").median().reset_index()

    output = dict(suite=suite,
                  kind=kind,
                  dim=dim,
                  seeds=seeds,
                  profile=profile,
                  slope=loglog_slope(table["n"], table["time_s"]))

    if suite == "center":
        output["decision_call_slope"] = loglog_slope(table["n"], table["decision_calls"])
        output["fallbacks"] = int(runs["fallback"].sum())

    if suite == "vertex":
        table["mean_iterations"] = runs.groupby("n")["iterations"].mean().values
        table["log2_n"] = np.log2(table["n"])
        output["fallbacks"] = int(runs["fallback"].sum())

    output["table"] = table.to_dict(orient="records")

    return output
