"""Quality metrics for computed envelopes and the run report record.

A correct stopping value V must lie below f (dominance), be midpoint-convex
along every axis at interior states, and preserve the global minimum. Against
the geometric hull oracle the signed error V - envelope should be bounded
below by roughly zero everywhere (the true envelope is a sub-solution); the
positive side measures the axis-control gap plus boundary distortion, which
shrinks away from the boundary, hence the margin-restricted error stats.
"""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import Any

import numpy as np

from .grid import Grid


def dominance_defect(V: np.ndarray, f: np.ndarray) -> float:
    """max(V - f): positive means V pokes above f somewhere."""
    return float(np.max(np.asarray(V) - np.asarray(f)))


def convexity_defect(grid: Grid, V: np.ndarray) -> float:
    """Worst midpoint-convexity violation over interior states and axes:
    max of V(x) - (V(x+de_i) + V(x-de_i)) / 2; <= 0 means axis-convex."""
    d = grid.spec.d
    Vg = np.asarray(V, dtype=float).reshape(grid.shape)
    inner = (slice(1, -1),) * d
    worst = -np.inf
    for u in range(d):
        lo = tuple(slice(0, -2) if i == u else slice(1, -1) for i in range(d))
        hi = tuple(slice(2, None) if i == u else slice(1, -1) for i in range(d))
        defect = Vg[inner] - 0.5 * (Vg[lo] + Vg[hi])
        if defect.size:
            worst = max(worst, float(defect.max()))
    return worst


def min_gap(V: np.ndarray, f: np.ndarray) -> float:
    """|min V - min f|: the envelope must not move the global minimum value."""
    return float(abs(np.min(V) - np.min(f)))


@dataclass
class InteriorErrorStats:
    sup_abs: float
    mean_abs: float
    signed_min: float
    signed_max: float
    n_states: int


def interior_error(
    grid: Grid, V: np.ndarray, reference: np.ndarray, margin: float = 0.1
) -> InteriorErrorStats:
    """Error stats of V - reference over states with every |n_i| <= (1-margin)*M."""
    if not (0.0 <= margin < 1.0):
        raise ValueError(f"margin must be in [0, 1), got {margin}")
    cutoff = (1.0 - margin) * grid.spec.M
    inside = np.all(np.abs(grid.multi_index) <= cutoff, axis=1)
    if not np.any(inside):
        raise ValueError(f"margin {margin} leaves no states")
    diff = (np.asarray(V, dtype=float) - np.asarray(reference, dtype=float))[inside]
    return InteriorErrorStats(
        sup_abs=float(np.abs(diff).max()),
        mean_abs=float(np.abs(diff).mean()),
        signed_min=float(diff.min()),
        signed_max=float(diff.max()),
        n_states=int(inside.sum()),
    )


@dataclass
class RunReport:
    """Everything a run writes to report.json; deterministic apart from
    wall_time_s."""

    function: str
    d: int
    M: int
    delta: float
    points_per_axis: int
    domain: list[list[float]]
    solver: str
    seed: int
    margin: float
    solvers: dict[str, Any] = field(default_factory=dict)
    comparisons: dict[str, float] = field(default_factory=dict)
    wall_time_s: float = 0.0

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2, sort_keys=True) + "\n"
