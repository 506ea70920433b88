"""Discrete convex envelopes via optimal stopping on a truncated lattice.

The package computes the convex envelope of a function sampled on a regular
grid by solving an optimal stopping problem: a controlled random walk picks an
axis, steps to one of the two neighbors with equal probability, and may stop
at any state to collect the function value. The value of the game is the
largest function that is convex along every axis and sits below the samples,
which on a fine grid tracks the classical convex envelope.

Solvers: exact value iteration (`value_iteration`, `q_value_iteration`) and
tabular Q-learning in synchronous and asynchronous flavors. `hull` holds an
independent geometric construction used for cross-checking.
"""
from .dp import (
    Policy,
    QTable,
    QValueResult,
    SolveConfig,
    ValueResult,
    extract_policy,
    extract_value,
    q_backup,
    q_value_iteration,
    value_iteration,
)
from .errors import ConfigurationError
from .functions import (
    TestFunction,
    catalog,
    default_points,
    domain_coords,
    get_function,
    grid_for,
    resolve_domain,
    sample_on_grid,
)
from .grid import (
    Grid,
    GridSpec,
    StateClass,
    build_grid,
    sample_transition,
    transitions,
)
from .hull import envelope_1d, envelope_2d, envelope_on_grid
from .qlearning import (
    LearnConfig,
    LearnResult,
    LearnStats,
    asynchronous_q_learning,
    init_q,
    step_size,
    synchronous_q_learning,
)
from .validation import (
    InteriorErrorStats,
    RunReport,
    convexity_defect,
    dominance_defect,
    interior_error,
    min_gap,
)

__version__ = "0.1.0"

__all__ = [
    "ConfigurationError",
    "Grid",
    "GridSpec",
    "StateClass",
    "build_grid",
    "transitions",
    "sample_transition",
    "TestFunction",
    "catalog",
    "get_function",
    "default_points",
    "resolve_domain",
    "domain_coords",
    "grid_for",
    "sample_on_grid",
    "SolveConfig",
    "ValueResult",
    "QValueResult",
    "QTable",
    "Policy",
    "value_iteration",
    "q_value_iteration",
    "q_backup",
    "extract_value",
    "extract_policy",
    "LearnConfig",
    "LearnStats",
    "LearnResult",
    "step_size",
    "init_q",
    "synchronous_q_learning",
    "asynchronous_q_learning",
    "envelope_1d",
    "envelope_2d",
    "envelope_on_grid",
    "dominance_defect",
    "convexity_defect",
    "min_gap",
    "InteriorErrorStats",
    "interior_error",
    "RunReport",
    "__version__",
]
