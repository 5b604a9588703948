"""Exact ergodic optimisation for locally constant potentials on subshifts of finite type."""
from .critical import (
    CriticalStructure,
    DirectionalInterval,
    critical_structure,
    diameter,
    directional_interval,
    is_unique_maximising,
)
from .curve import BetaCurve, compute_curve
from .errors import (
    CapExceeded,
    DegenerateSystem,
    EdgeMismatch,
    EdgeSetMismatch,
    EmptyRecurrentPart,
    ErgoptError,
    InadmissiblePotential,
    InvalidGrid,
    InvalidInterval,
    InvalidWindow,
    OutOfDomain,
)
from .estimators import BetaCurveRegressor, ErgodicOptimizer
from .graph import (
    CycleMeasure,
    TransitionGraph,
    cycle_mean,
    enumerate_simple_cycles,
    format_rational,
    parse_rational,
    prune_to_recurrent,
    strongly_connected_components,
)
from .maxmean import MaxMeanResult, beta, max_cycle_mean_howard, max_cycle_mean_karp
from .symbolic import Potential, SftSystem, combine, lift, refine, sup_norm

__version__ = "0.1.0"

__all__ = [
    "BetaCurve",
    "BetaCurveRegressor",
    "CapExceeded",
    "CriticalStructure",
    "CycleMeasure",
    "DegenerateSystem",
    "DirectionalInterval",
    "EdgeMismatch",
    "EdgeSetMismatch",
    "EmptyRecurrentPart",
    "ErgodicOptimizer",
    "ErgoptError",
    "InadmissiblePotential",
    "InvalidGrid",
    "InvalidInterval",
    "InvalidWindow",
    "MaxMeanResult",
    "OutOfDomain",
    "Potential",
    "SftSystem",
    "TransitionGraph",
    "beta",
    "combine",
    "compute_curve",
    "critical_structure",
    "cycle_mean",
    "diameter",
    "directional_interval",
    "enumerate_simple_cycles",
    "format_rational",
    "is_unique_maximising",
    "lift",
    "max_cycle_mean_howard",
    "max_cycle_mean_karp",
    "parse_rational",
    "prune_to_recurrent",
    "refine",
    "strongly_connected_components",
    "sup_norm",
]
