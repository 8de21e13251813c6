"""Random log-concave polynomials: samplers, root solver, limit laws, statistics."""

import json as _json

from . import _core
from ._core import (
    RootSet,
    check_root_set,
    companion_oracle,
    eval_log,
    find_roots,
    matched_distance,
    newton_polygon_radii,
    peak_pmf,
    peak_pmf_exact,
    sample,
    stats,
    theory,
)


def run_experiment(suite="all", model="beta", n_values=(10,), replicates=1, seed=0, alpha=1.0,
                   precision="auto", threads=1):
    """Run an experiment suite and return the record (without timings) as a dict."""
    text = _core._run_experiment(suite, model, list(n_values), replicates, seed, alpha, precision, threads)
    return _json.loads(text)


__all__ = [
    "RootSet",
    "check_root_set",
    "companion_oracle",
    "eval_log",
    "find_roots",
    "matched_distance",
    "newton_polygon_radii",
    "peak_pmf",
    "peak_pmf_exact",
    "run_experiment",
    "sample",
    "stats",
    "theory",
]
