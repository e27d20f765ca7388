"""scikit-learn style wrappers around the partitioners and refiners."""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.exceptions import NotFittedError

from .instances import initial_hash, initial_random
from .partition import Partition
from .pipeline import ALGORITHMS, refine
from .validation import check_alpha, check_assignment, check_graph, check_k


class EdgePartitionRefiner(BaseEstimator):
    """Local-search refinement of a balanced k-edge partition.

    ``fit(X, y)`` takes the graph ``X`` (a :class:`~edgerefine.graph.Graph` or
    an ``(m, 2)`` edge array) and an initial per-edge assignment ``y`` and
    stores the refined assignment in ``assignment_`` and the run summary in
    ``report_``.

    Parameters
    ----------
    algo : {"lsg", "lsf", "lsg+lsf"}
    k : int or None
        Part count; inferred from ``y`` when None.
    alpha : float, str or Fraction
        Balance slack, at most 3 fractional digits.
    seed : int
    max_rounds, stagnation_rounds, time_budget_secs :
        Stop conditions for the flow refiner.
    capacity_rule : {"edges", "vertices"}
        Destination test used by the greedy refiner.
    """

    def __init__(self, algo="lsg", k=None, alpha=1.1, seed=0, max_rounds=None,
                 stagnation_rounds=50, time_budget_secs=60.0, capacity_rule="edges"):
        self.algo = algo
        self.k = k
        self.alpha = alpha
        self.seed = seed
        self.max_rounds = max_rounds
        self.stagnation_rounds = stagnation_rounds
        self.time_budget_secs = time_budget_secs
        self.capacity_rule = capacity_rule

    def _run(self, X, y):
        if self.algo not in ALGORITHMS:
            raise ValueError(f"algo must be one of {ALGORITHMS}, got {self.algo!r}")
        g = check_graph(X)
        assign, k = check_assignment(y, g.m, self.k)
        p = Partition(g, k, check_alpha(self.alpha), assign)
        if not p.is_balanced():
            raise ValueError(f"initial partition violates balance in parts {p.violating_parts()}")
        report = refine(p, self.algo, self.seed, max_rounds=self.max_rounds,
                        stagnation_rounds=self.stagnation_rounds,
                        time_budget_secs=self.time_budget_secs,
                        capacity_rule=self.capacity_rule)
        return p, report

    def fit(self, X, y):
        p, report = self._run(X, y)
        self.partition_ = p
        self.report_ = report
        self.assignment_ = np.asarray(p.assign, dtype=np.int64)
        self.n_parts_ = p.k
        self.replication_factor_ = float(p.replication_factor())
        return self

    def transform(self, X, y):
        """Refine another assignment with the same parameters; returns it."""
        if not hasattr(self, "assignment_"):
            raise NotFittedError("call fit before transform")
        p, _ = self._run(X, y)
        return np.asarray(p.assign, dtype=np.int64)

    def fit_transform(self, X, y):
        return self.fit(X, y).assignment_

    def score(self, X, y=None):
        """Negative replication factor of ``y`` (or the fitted assignment) on ``X``."""
        g = check_graph(X)
        if y is None:
            if not hasattr(self, "assignment_"):
                raise NotFittedError("call fit first or pass an assignment")
            y = self.assignment_
        assign, k = check_assignment(y, g.m, self.k)
        return -float(Partition(g, k, check_alpha(self.alpha), assign).replication_factor())


class RandomEdgePartitioner(BaseEstimator):
    """Seeded shuffle dealt round-robin into ``k`` parts."""

    def __init__(self, k=64, seed=0):
        self.k = k
        self.seed = seed

    def fit(self, X, y=None):
        g = check_graph(X)
        self.assignment_ = np.asarray(initial_random(g, check_k(self.k), seed=self.seed),
                                      dtype=np.int64)
        return self

    def fit_predict(self, X, y=None):
        return self.fit(X).assignment_


class HashEdgePartitioner(BaseEstimator):
    """Edge id modulo ``k``."""

    def __init__(self, k=64):
        self.k = k

    def fit(self, X, y=None):
        g = check_graph(X)
        self.assignment_ = np.asarray(initial_hash(g, check_k(self.k)), dtype=np.int64)
        return self

    def fit_predict(self, X, y=None):
        return self.fit(X).assignment_
