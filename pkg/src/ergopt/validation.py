"""Input validation helpers for the estimator layer."""
from fractions import Fraction

import numpy as np

from .errors import EdgeSetMismatch, ErgoptError, InvalidInterval
from .graph import TransitionGraph, parse_rational


def check_rational(value, name: str = "value") -> Fraction:
    try:
        return parse_rational(value)
    except ValueError as exc:
        raise ValueError(f"{name}: {exc}") from None


def check_graph(graph) -> TransitionGraph:
    """Accept a :class:`TransitionGraph` or a graph document (dict)."""
    if isinstance(graph, TransitionGraph):
        return graph
    if isinstance(graph, dict):
        return TransitionGraph.from_dict(graph)
    raise ErgoptError(f"expected a TransitionGraph or graph document, got {type(graph).__name__}")


def check_interval(t_lo, t_hi) -> tuple:
    lo, hi = check_rational(t_lo, "t_lo"), check_rational(t_hi, "t_hi")
    if not lo < hi:
        raise InvalidInterval(f"need t_lo < t_hi, got [{lo}, {hi}]")
    return lo, hi


def check_parameters(T) -> list:
    """Flatten a scalar or 1-d array-like of parameters into Fractions."""
    arr = np.asarray(T, dtype=object)
    if arr.ndim > 1:
        raise ValueError(f"expected a 1-d array of parameters, got shape {arr.shape}")
    return [check_rational(t, "t") for t in arr.reshape(-1)]


def check_directions(X, n_edges: int) -> list:
    """2-d array-like of per-edge direction weights -> list of Fraction rows."""
    arr = np.asarray(X, dtype=object)
    if arr.ndim == 1:
        arr = arr.reshape(1, -1)
    if arr.ndim != 2:
        raise ValueError(f"expected a 2-d array of directions, got shape {arr.shape}")
    if arr.shape[1] != n_edges:
        raise EdgeSetMismatch(f"directions have {arr.shape[1]} columns, graph has {n_edges} edges")
    return [[check_rational(x, "direction weight") for x in row] for row in arr]
