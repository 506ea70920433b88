"""Truncated lattice state space and controlled random-walk kernel.

States live on the hypercubic lattice {n * delta : -M <= n_i <= M} for
i = 1..d. A control picks an axis; the chain then moves one step up or down
that axis with probability 1/2 each. A move that would leave the lattice is
replaced by a self-loop at the current state, so face states keep mass 1/2 on
themselves along their clipped axis. Corner states (every coordinate at the
boundary) are terminal and never dispatch transitions.

Flat state ids enumerate the lattice in row-major (C) order with axis 1
slowest, i.e. id = ravel of (n_1 + M, ..., n_d + M) over shape (2M+1,)^d.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum

import numpy as np

from .errors import ConfigurationError


class StateClass(IntEnum):
    INTERIOR = 0
    FACE = 1
    CORNER = 2


@dataclass(frozen=True)
class GridSpec:
    """Dimension d, half-width M (in steps), and lattice spacing delta."""

    d: int
    M: int
    delta: float

    def __post_init__(self) -> None:
        if self.d < 1:
            raise ConfigurationError(f"dimension must be >= 1, got {self.d}")
        if self.M < 1:
            raise ConfigurationError(f"M must be >= 1, got {self.M}")
        if not (self.delta > 0.0 and np.isfinite(self.delta)):
            raise ConfigurationError(f"delta must be positive and finite, got {self.delta}")

    @property
    def points_per_axis(self) -> int:
        return 2 * self.M + 1

    @property
    def n_states(self) -> int:
        return self.points_per_axis ** self.d


class Grid:
    """Materialized lattice: index maps, state classes, successor table.

    Built once by :func:`build_grid`; everything downstream (solvers, learners,
    metrics, the hull oracle) works off this object.
    """

    def __init__(self, spec: GridSpec):
        self.spec = spec
        d, M = spec.d, spec.M
        self.shape = (spec.points_per_axis,) * d
        self.n_states = spec.n_states

        # multi_index[s] = (n_1, ..., n_d) with n in [-M, M]
        axes = [np.arange(-M, M + 1)] * d
        mesh = np.meshgrid(*axes, indexing="ij")
        self.multi_index = np.stack([m.ravel() for m in mesh], axis=1)

        at_boundary = np.abs(self.multi_index) == M
        n_at = at_boundary.sum(axis=1)
        self.state_class = np.where(
            n_at == d, np.int8(StateClass.CORNER),
            np.where(n_at > 0, np.int8(StateClass.FACE), np.int8(StateClass.INTERIOR)),
        )
        self.is_corner = self.state_class == StateClass.CORNER
        self.is_boundary = n_at > 0
        self.corner_ids = np.flatnonzero(self.is_corner)
        self.noncorner_ids = np.flatnonzero(~self.is_corner)

        # successor[s, u, 0] = one step up axis u, successor[s, u, 1] = one step
        # down; off-grid moves are clipped to s itself (the self-loop).
        strides = np.array([spec.points_per_axis ** (d - 1 - i) for i in range(d)])
        sid = np.arange(self.n_states)
        self.successor = np.empty((self.n_states, d, 2), dtype=np.int64)
        for u in range(d):
            up = np.where(self.multi_index[:, u] < M, sid + strides[u], sid)
            down = np.where(self.multi_index[:, u] > -M, sid - strides[u], sid)
            self.successor[:, u, 0] = up
            self.successor[:, u, 1] = down

    def coords(self) -> np.ndarray:
        """Lattice coordinates n * delta, shape (n_states, d)."""
        return self.multi_index * self.spec.delta

    def state_id(self, multi) -> int:
        n = np.asarray(multi)
        if n.shape != (self.spec.d,) or np.abs(n).max() > self.spec.M:
            raise ValueError(f"multi-index {multi} outside the lattice")
        return int(np.ravel_multi_index(tuple(n + self.spec.M), self.shape))


def build_grid(spec: GridSpec) -> Grid:
    return Grid(spec)


def transitions(grid: Grid, state: int, control: int) -> list[tuple[int, float]]:
    """Transition list [(successor_id, probability), ...] for one control.

    In-grid moves come first (up before down), a self-loop last when a move is
    clipped. Probabilities are exactly 0.5 each and sum to 1. Querying a
    corner state is a contract violation (corners are terminal).
    """
    if not (0 <= state < grid.n_states):
        raise ValueError(f"state id {state} out of range")
    if not (0 <= control < grid.spec.d):
        raise ValueError(f"control {control} out of range for d={grid.spec.d}")
    if grid.is_corner[state]:
        raise ValueError(f"state {state} is a terminal corner; it has no transitions")
    up, down = int(grid.successor[state, control, 0]), int(grid.successor[state, control, 1])
    out: list[tuple[int, float]] = []
    loop_mass = 0.0
    for succ in (up, down):
        if succ == state:
            loop_mass += 0.5
        else:
            out.append((succ, 0.5))
    if loop_mass > 0.0:
        out.append((state, loop_mass))
    return out


def sample_transition(grid: Grid, state: int, control: int, rng: np.random.Generator) -> int:
    """Draw one successor: up on rng.random() < 0.5, else down (clipped moves
    land back on ``state``)."""
    if grid.is_corner[state]:
        raise ValueError(f"state {state} is a terminal corner; it has no transitions")
    side = 0 if rng.random() < 0.5 else 1
    return int(grid.successor[state, control, side])
