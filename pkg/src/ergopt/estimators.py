"""scikit-learn style wrappers around the exact algorithms.

The estimators hold only hyper-parameters in ``__init__`` (so ``get_params``
and ``clone`` work) and store results in trailing-underscore attributes after
``fit``.  Returned arrays have ``dtype=object`` and hold exact Fractions.
"""
import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from .critical import critical_structure, directional_interval, is_unique_maximising
from .curve import compute_curve
from .maxmean import max_cycle_mean_howard, max_cycle_mean_karp
from .validation import check_directions, check_graph, check_interval, check_parameters

_METHODS = {"karp": max_cycle_mean_karp, "howard": max_cycle_mean_howard}


class ErgodicOptimizer(BaseEstimator):
    """Maximum ergodic average and maximising-measure structure of a weighted graph.

    Parameters
    ----------
    method : {"karp", "howard"}
        Algorithm for the maximum cycle mean.
    base : int or None
        Base vertex of the sub-eigenvector; None picks one on the witness cycle.

    Attributes
    ----------
    lambda_ : Fraction
    witness_cycle_ : CycleMeasure
    critical_structure_ : CriticalStructure
    unique_ : bool
        Whether the maximising measure is unique.

    ``transform`` maps rows of per-edge direction weights to the interval
    ``[min, max]`` of their integrals over the maximising measures.
    """

    def __init__(self, method="karp", base=None):
        self.method = method
        self.base = base

    def fit(self, X, y=None):
        graph = check_graph(X)
        if self.method not in _METHODS:
            raise ValueError(f"method must be one of {sorted(_METHODS)}, got {self.method!r}")
        result = _METHODS[self.method](graph)
        self.graph_ = graph
        self.lambda_ = result.lam
        self.witness_cycle_ = result.witness_cycle
        self.per_scc_lambda_ = result.per_scc_lambda
        self.critical_structure_ = critical_structure(graph, self.base)
        self.certificate_ = is_unique_maximising(self.critical_structure_)
        self.unique_ = self.certificate_.unique
        return self

    def transform(self, X):
        check_is_fitted(self, "critical_structure_")
        rows = check_directions(X, self.graph_.edge_count)
        out = np.empty((len(rows), 2), dtype=object)
        for i, row in enumerate(rows):
            iv = directional_interval(self.critical_structure_, row)
            out[i, 0], out[i, 1] = iv.lower, iv.upper
        return out


class BetaCurveRegressor(BaseEstimator):
    """Exact curve ``t -> beta(f + t g)`` on ``[t_lo, t_hi]``.

    ``fit(f_graph, g_graph)`` takes two weightings of the same edge set;
    ``predict(T)`` evaluates the curve and ``derivatives(T)`` returns the
    one-sided slopes.
    """

    def __init__(self, t_lo=0, t_hi=1):
        self.t_lo = t_lo
        self.t_hi = t_hi

    def fit(self, X, y):
        f_graph, g_graph = check_graph(X), check_graph(y)
        lo, hi = check_interval(self.t_lo, self.t_hi)
        self.curve_ = compute_curve(f_graph, g_graph, lo, hi)
        self.breakpoints_ = tuple(self.curve_.breakpoints)
        self.slopes_ = self.curve_.slopes
        return self

    def predict(self, T):
        check_is_fitted(self, "curve_")
        return np.array([self.curve_.evaluate(t) for t in check_parameters(T)], dtype=object)

    def derivatives(self, T):
        check_is_fitted(self, "curve_")
        ts = check_parameters(T)
        out = np.empty((len(ts), 2), dtype=object)
        for i, t in enumerate(ts):
            out[i, 0], out[i, 1] = self.curve_.one_sided_derivatives(t)
        return out

    def is_differentiable(self, T):
        check_is_fitted(self, "curve_")
        return np.array([self.curve_.is_differentiable_at(t) for t in check_parameters(T)])
